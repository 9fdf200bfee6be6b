"""Figure regeneration for fermicorr sweep outputs (consumes CSV only)."""

from .figures import FigureSpec, plot_nu_summary, plot_profiles
from .schema import SchemaError, read_profiles, read_summary

__all__ = [
    "FigureSpec",
    "SchemaError",
    "plot_nu_summary",
    "plot_profiles",
    "read_profiles",
    "read_summary",
]
