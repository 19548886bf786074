from .config import Settings, settings
from .errors import LabError, ParameterError

__all__ = ["LabError", "ParameterError", "Settings", "settings"]
