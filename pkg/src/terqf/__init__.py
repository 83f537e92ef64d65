"""Exact arithmetic for positive ternary quadratic forms: representation
counts, automorph orbits, p-adic local densities, class groups of binary
forms and theta-series identities."""

from .automorphs import automorph_group, essential_count, is_essentially_unique, orbit_partition
from .binaryqf import class_group, class_number, reduced_forms
from .forms import TernaryForm, enumerate_representations, representation_count, theta_coefficients
from .localdensity import local_density, siegel_count

__version__ = "0.1.0"

__all__ = [
    "TernaryForm", "enumerate_representations", "representation_count", "theta_coefficients",
    "automorph_group", "orbit_partition", "essential_count", "is_essentially_unique",
    "class_number", "class_group", "reduced_forms", "local_density", "siegel_count",
]
