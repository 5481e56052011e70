"""Exception hierarchy. Every error carries the pipeline stage that raised it."""


class FloorpathError(Exception):
    stage = "general"

    def __str__(self):
        return f"[{self.stage}] {super().__str__()}"


class RasterError(FloorpathError):
    stage = "raster"


class HomographyError(FloorpathError):
    stage = "homography"


class DegenerateConfigurationError(HomographyError):
    pass


class CostConfigError(FloorpathError):
    stage = "costmap"


class GridSpecError(FloorpathError):
    stage = "costgrid"


class PlanningError(FloorpathError):
    stage = "planner"


class EvalError(FloorpathError):
    stage = "eval"


class SceneError(FloorpathError):
    stage = "scenegen"


class OverlayError(FloorpathError):
    stage = "overlay"


class ConfigError(FloorpathError):
    stage = "config"
