"""Special Lagrangian cone toolkit.

Submodules
----------
spectrum : torus-link Laplace spectra, exponent counts, stability index
lawlor   : Lawlor-neck parameter maps and numerical SL verification
planes   : classification of transverse SL m-plane pairs
consum   : connected-sum feasibility, balance equations, phase regions
dims     : cohomological moduli-dimension and index formulas
t2cone   : gluing calculus for the stable T^2-cone
cli      : JSON command-line interface over all of the above
"""

__version__ = "0.1.0"

from . import errors  # noqa: F401
