"""Laplace spectrum of the flat torus link of the Harvey-Lawson
U(1)^(m-1)-invariant cone, homogeneity exponents, and the cone's
stability index.

The link is a flat (m-1)-torus whose Laplace eigenvalues are indexed by
integer vectors n with eigenvalue Q(n) = m*sum(n_i^2) - (sum n_i)^2.
From the eigenvalue table the module derives the exponent set (both
roots of alpha*(alpha+m-2) = lambda), the counting function ``n_sigma``,
and the stability/rigidity report for each dimension m.

Exponent comparisons against rational thresholds are carried out through
the exact quadratic relation (integer/Fraction arithmetic only); floats
appear purely as display approximations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import IncompleteSpectrumError, InputError
from ._kernels import eigenvalue_counts

__all__ = [
    "ConeSpectrum",
    "ExponentData",
    "ExponentEntry",
    "StabilityReport",
    "hl_eigenvalue",
    "enumerate_spectrum",
    "exponents",
    "n_sigma",
    "stability_index",
]


def _as_exact(x, what: str) -> Fraction:
    """Coerce x to Fraction; floats convert via their exact binary value."""
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"{what} must be finite, got {x!r}")
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    raise InputError(f"{what} must be a real number, got {type(x).__name__}")


def hl_eigenvalue(m: int, n) -> int:
    """Eigenvalue Q(n) = m*sum(n_i^2) - (sum n_i)^2 of the lattice point n.

    n must have exactly m-1 integer entries.  Q(n) >= ||n||^2 always
    (Cauchy-Schwarz), which is what makes ball enumeration complete.
    """
    if m < 3:
        raise InputError(f"dimension m must be >= 3, got {m}")
    entries = [int(v) for v in n]
    if len(entries) != m - 1:
        raise InputError(
            f"lattice point needs m-1 = {m - 1} entries, got {len(entries)}"
        )
    s = sum(entries)
    t = sum(v * v for v in entries)
    return m * t - s * s


@dataclass(frozen=True)
class ConeSpectrum:
    """Eigenvalue table (lambda, multiplicity), complete up to ``cutoff``.

    ``entries`` is sorted strictly increasing in lambda.  Instances for
    the torus link come from :func:`enumerate_spectrum`; a generic link
    can be described by passing an explicit table (rational eigenvalues
    allowed).  Equal eigenvalues in a supplied table are merged by
    summing their multiplicities.
    """

    m: int
    entries: tuple  # of (eigenvalue, multiplicity)
    cutoff: Fraction

    def __init__(self, m: int, entries, cutoff):
        if m < 3:
            raise InputError(f"dimension m must be >= 3, got {m}")
        cut = _as_exact(cutoff, "cutoff")
        merged: dict[Fraction, int] = {}
        for lam, mult in entries:
            lam_e = _as_exact(lam, "eigenvalue")
            mult = int(mult)
            if lam_e < 0:
                raise InputError(f"eigenvalues must be nonnegative, got {lam}")
            if mult <= 0:
                raise InputError(f"multiplicities must be positive, got {mult}")
            merged[lam_e] = merged.get(lam_e, 0) + mult
        table = tuple(sorted(merged.items()))
        for lam_e, _ in table:
            if lam_e > cut:
                raise InputError(
                    f"eigenvalue {lam_e} exceeds the declared cutoff {cut}"
                )
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "entries", table)
        object.__setattr__(self, "cutoff", cut)

    def multiplicity(self, lam) -> int:
        lam = _as_exact(lam, "eigenvalue")
        for ev, mult in self.entries:
            if ev == lam:
                return mult
        return 0


def enumerate_spectrum(m: int, cutoff: int) -> ConeSpectrum:
    """Complete eigenvalue table of the torus link up to ``cutoff``.

    Enumerates the lattice ball ||n||^2 <= cutoff, which covers every
    eigenvalue <= cutoff because Q(n) >= ||n||^2.
    """
    if m < 3:
        raise InputError(f"dimension m must be >= 3, got {m}")
    cutoff = int(cutoff)
    if cutoff < 0:
        raise InputError(f"cutoff must be >= 0, got {cutoff}")
    counts = eigenvalue_counts(m, cutoff)
    entries = [(lam, int(c)) for lam, c in enumerate(counts) if c > 0]
    return ConeSpectrum(m, entries, cutoff)


@dataclass(frozen=True)
class ExponentEntry:
    """One exponent alpha with alpha*(alpha+m-2) = lam.

    ``branch`` is +1 for the upper root, -1 for the lower; ``alpha`` is a
    float approximation only - order/threshold decisions always go back
    to (lam, branch).
    """

    alpha: float
    lam: Fraction
    branch: int
    multiplicity: int


@dataclass(frozen=True)
class ExponentData:
    """Both exponent roots for every eigenvalue of a spectrum.

    The exponents in the open interval (2-m, 0) never occur: lower roots
    sit at or below 2-m and upper roots at or above 0.
    """

    m: int
    cutoff: Fraction
    entries: tuple  # of ExponentEntry, sorted ascending by alpha

    def multiplicity_at(self, alpha) -> int:
        """Total multiplicity of the exact exponent value ``alpha``.

        ``alpha`` is interpreted as a rational and matched through the
        quadratic relation, not by float comparison.
        """
        a = _as_exact(alpha, "alpha")
        lam = a * (a + self.m - 2)
        branch = 1 if 2 * a + (self.m - 2) >= 0 else -1
        return sum(
            e.multiplicity
            for e in self.entries
            if e.lam == lam and e.branch == branch
        )


def exponents(spec: ConeSpectrum) -> ExponentData:
    """Exponent table alpha+-(lam) = (-(m-2) +- sqrt((m-2)^2+4*lam))/2."""
    m = spec.m
    c = m - 2
    out = []
    for lam, mult in spec.entries:
        disc = math.sqrt(c * c + 4 * lam)
        out.append(ExponentEntry((-c - disc) / 2, lam, -1, mult))
        out.append(ExponentEntry((-c + disc) / 2, lam, +1, mult))
    out.sort(key=lambda e: (e.alpha, e.branch))
    return ExponentData(m, spec.cutoff, tuple(out))


def n_sigma(data: ExponentData, delta) -> int:
    """Exponent counting function.

    For delta >= 0 this sums multiplicities of exponents in [0, delta];
    for delta < 0 it is minus the sum over (delta, 0).  Which eigenvalues
    can contribute is decided exactly: an upper root lies in [0, delta]
    iff lam <= delta*(delta+m-2), and a lower root lies in (delta, 0)
    iff lam < delta*(delta+m-2).  Raises when the cutoff cannot certify
    that every contributing eigenvalue is in the table.
    """
    d = _as_exact(delta, "delta")
    m = data.m
    lam_needed = d * (d + m - 2)
    if lam_needed > data.cutoff:
        raise IncompleteSpectrumError(
            f"n_sigma({delta}) needs eigenvalues up to {lam_needed} but the "
            f"table is only complete up to {data.cutoff}"
        )
    seen: dict[Fraction, int] = {}
    for e in data.entries:
        if e.branch == +1 and e.lam not in seen:
            seen[e.lam] = e.multiplicity
    if d >= 0:
        return sum(mult for lam, mult in seen.items() if lam <= lam_needed)
    return -sum(mult for lam, mult in seen.items() if lam < lam_needed)


@dataclass(frozen=True)
class StabilityReport:
    """Stability/rigidity data of the Harvey-Lawson cone in dimension m."""

    m: int
    n_sigma2: int
    m_sigma2: int
    dim_g: int
    s_ind: int
    stable: bool
    rigid: bool


def stability_index(m: int) -> StabilityReport:
    """Stability index of the U(1)^(m-1)-invariant cone.

    s-ind = N_sigma(2) - b0(link) - m^2 - 2m + 1 + dim G with b0 = 1 and
    dim G = m-1 here; stable means s-ind = 0, rigid means the exponent-2
    multiplicity equals m^2 - 1 - dim G.  Stability implies rigidity.
    """
    if m < 3:
        raise InputError(f"dimension m must be >= 3, got {m}")
    spec = enumerate_spectrum(m, 2 * m)
    data = exponents(spec)
    n2 = n_sigma(data, 2)
    m2 = spec.multiplicity(2 * m)  # alpha = 2 corresponds to lam = 2m
    dim_g = m - 1
    s_ind = n2 - 1 - m * m - 2 * m + 1 + dim_g
    return StabilityReport(
        m=m,
        n_sigma2=n2,
        m_sigma2=m2,
        dim_g=dim_g,
        s_ind=s_ind,
        stable=(s_ind == 0),
        rigid=(m2 == m * m - 1 - dim_g),
    )
