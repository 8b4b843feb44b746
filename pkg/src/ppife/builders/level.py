from dataclasses import dataclass
import logging
from pprint import pformat

from ppife.builders.ife import IfeBasisBuilder
from ppife.builders.lifting import LiftingBuilder
from ppife.builders.mesh import build_cartesian_mesh, classify_mesh
from ppife.builders.system import SystemBuilder
from ppife.dimensions import UNIT_BOX, Rectangle
from ppife.models.problem import Problem
from ppife.models.system import Discretization, LinearSystem
from ppife.parameters.quadrature import QuadratureParameters


LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelBuilder:
    """The system of a problem on one mesh of a refinement ladder."""

    #: Problem to discretize
    problem: Problem
    #: Number of squares per direction
    n: int
    #: Quadrature orders
    quadrature: QuadratureParameters = QuadratureParameters()
    #: Domain covered by the mesh
    domain: Rectangle = UNIT_BOX

    def discretize(self) -> Discretization:
        """Mesh, IFE bases and liftings, without assembly."""
        LOGGER.info("Building level N=%d of %s", self.n, self.problem.name)
        LOGGER.debug(pformat(self.quadrature))

        coefficient = self.problem.coefficient
        mesh = build_cartesian_mesh(self.domain, self.n)
        classification = classify_mesh(mesh, self.problem.geometry)
        bases = IfeBasisBuilder(classification, coefficient).build()
        liftings = LiftingBuilder(mesh, classification, bases, coefficient).build()
        return Discretization(mesh, classification, bases, liftings)

    def build(self) -> LinearSystem:
        discretization = self.discretize()
        return SystemBuilder(
            mesh=discretization.mesh,
            classification=discretization.classification,
            bases=discretization.bases,
            liftings=discretization.liftings,
            coefficient=self.problem.coefficient,
            f=self.problem.f,
            g=self.problem.g,
            stiffness_order=self.quadrature.stiffness_order,
            load_order=self.quadrature.load_order,
        ).build()
