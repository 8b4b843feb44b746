from argparse import ArgumentParser, Namespace
import csv
from dataclasses import dataclass
import io
import logging
from pathlib import Path
from typing import Self

from ppife.analysis.properties import VerificationReport
from ppife.analysis.rates import RateTable
from ppife.models.mesh import TriMesh
from ppife.models.problem import Problem
from ppife.models.system import LinearSystem
from ppife.solver import DiscreteSolution


LOGGER = logging.getLogger(__name__)

SAMPLES_HEADER = ("x", "y", "u_h", "u", "error")


@dataclass
class Exporter:
    #: Directory to put the result files in
    directory: Path = Path("./build")
    #: Build name
    name: str | None = None
    #: Write the result files?
    enable_export: bool = True
    #: Write the meshes
    export_mesh: bool = False
    #: Write the assembled matrices
    dump_matrix: bool = False

    @classmethod
    def add_cli_arguments(cls, parser: ArgumentParser) -> None:
        group = parser.add_argument_group(title="Exporter")
        _ = group.add_argument(
            "--out",
            metavar="DIR",
            default=Path("./build"),
            type=Path,
            help="Where to put the result files (default: %(default)s)",
        )
        _ = group.add_argument(
            "--build-name",
            metavar="NAME",
            type=str,
            help="Name of the build, inserted in the file names (optional)",
        )
        _ = group.add_argument(
            "--no-export",
            dest="enable_export",
            action="store_false",
            default=True,
            help="Don't write any result file",
        )
        _ = group.add_argument(
            "--export-mesh",
            action="store_true",
            default=False,
            help="Write the vertices and triangles of each mesh",
        )
        _ = group.add_argument(
            "--dump-matrix",
            action="store_true",
            default=False,
            help="Write each assembled matrix as row col value lines",
        )

    @classmethod
    def from_cli_arguments(cls, arguments: Namespace) -> Self:
        return cls(
            directory=arguments.out,  # pyright: ignore[reportAny]
            name=arguments.build_name,  # pyright: ignore[reportAny]
            enable_export=arguments.enable_export,  # pyright: ignore[reportAny]
            export_mesh=arguments.export_mesh,  # pyright: ignore[reportAny]
            dump_matrix=arguments.dump_matrix,  # pyright: ignore[reportAny]
        )

    def _build_path(self, object_name: str, extension: str) -> Path:
        return (
            self.directory / f"{object_name}.{self.name}.{extension}"
            if self.name
            else self.directory / f"{object_name}.{extension}"
        )

    def _write(self, object_name: str, extension: str, content: str) -> Path | None:
        if not self.enable_export:
            LOGGER.info("Skipping export of %s", object_name)
            return None
        path = self._build_path(object_name, extension)
        LOGGER.info("Exporting %s", path)
        path.parent.mkdir(parents=True, exist_ok=True)
        _ = path.write_text(content)
        return path

    def export_rates(self, table: RateTable) -> Path | None:
        return self._write("rates", "csv", table.to_csv())

    def export_samples(self, solution: DiscreteSolution, problem: Problem) -> Path | None:
        """Nodal values of a solution against the exact solution, if known."""
        mesh = solution.discretization.mesh
        vertices = mesh.vertices
        exact = problem.u(vertices) if problem.exact is not None else None

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(SAMPLES_HEADER)
        for index, ((x, y), value) in enumerate(zip(vertices, solution.coefficients)):
            if exact is None:
                writer.writerow((f"{x:.6f}", f"{y:.6f}", f"{value:.10e}", "", ""))
            else:
                writer.writerow(
                    (
                        f"{x:.6f}",
                        f"{y:.6f}",
                        f"{value:.10e}",
                        f"{exact[index]:.10e}",
                        f"{exact[index] - value:.3e}",
                    )
                )
        return self._write(f"run_N{mesh.n}", "csv", buffer.getvalue())

    def export_properties(self, report: VerificationReport) -> Path | None:
        return self._write("properties", "txt", str(report))

    def export_mesh_file(self, mesh: TriMesh) -> Path | None:
        if not self.export_mesh:
            return None
        lines = [f"vertices {mesh.vertex_count}"]
        lines.extend(f"{x:.17g} {y:.17g}" for x, y in mesh.vertices)
        lines.append(f"triangles {mesh.triangle_count}")
        lines.extend(" ".join(str(i) for i in triangle) for triangle in mesh.triangles)
        return self._write(f"mesh_N{mesh.n}", "txt", "\n".join(lines) + "\n")

    def export_matrix(self, system: LinearSystem) -> Path | None:
        if not self.dump_matrix:
            return None
        n = system.discretization.mesh.n
        return self._write(f"matrix_N{n}", "txt", "\n".join(system.coordinate_lines()) + "\n")
