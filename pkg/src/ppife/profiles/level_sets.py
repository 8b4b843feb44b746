"""Named interfaces of the benchmark problems."""

from ppife.models.level_set import (
    CircleLevelSet,
    FlowerLevelSet,
    LevelSetGeometry,
    LineLevelSet,
)


LEVEL_SET_PROFILES: dict[str, LevelSetGeometry] = {
    # Circle of radius 0.5 centered in the unit box
    "circle": CircleLevelSet(radius=0.5),
    # Non-convex closed curve
    "flower": FlowerLevelSet(offset=0.02),
    # Vertical line, away from the mesh lines. It leaves the box through the top and
    # bottom sides, where its normal is tangent to the boundary.
    "line": LineLevelSet(point=(0.1, 0.0), normal=(1.0, 0.0)),
}
