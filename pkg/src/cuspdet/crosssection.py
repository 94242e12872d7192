r"""Cross-section data model: Betti numbers, coclosed spectra, zeta values.

A cross section bundles the even dimension n, the Betti numbers b_0..b_n of
the (possibly twisted) cohomology, the bundle rank, the volume, and the
nonzero spectrum of the Hodge Laplacian restricted to coclosed p-forms,
stored per degree as a truncated list of (eigenvalue, multiplicity) pairs
with a declared Weyl tail model.  The document format is a single JSON
object

    {"n": int, "betti": [int, ...], "rank_e": int, "volume": number,
     "coclosed": {"<p>": [[mu_sq, mult], ...]},
     "tail_dimension_hint": number}

Spectral zeta values sum the truncated list and integrate the declared
Weyl density beyond it; the value at s = 0 is a boundary quantity that a
truncated list cannot see, so it is computed by exact lattice summation
formulas when the spectrum is recognized as a scaled square-lattice
spectrum (the shape produced by ``generate_flat_torus_2d``) and refused
otherwise.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .spectra import SpectrumList, spectrum


class SchemaError(ValueError):
    """Malformed cross-section document."""


class MissingSpectrumError(KeyError):
    """No coclosed spectrum stored for the requested degree."""


class Zeta0Unavailable(ValueError):
    """zeta(0) requested for a spectrum with no exact continuation route."""


@dataclass(frozen=True)
class CrossSection:
    n: int
    betti: tuple
    rank_e: int
    volume: float
    coclosed: dict = field(default_factory=dict)
    tail_dimension_hint: float = 2.0

    def __post_init__(self):
        if self.n % 2 != 0 or self.n < 2:
            raise SchemaError(f"dimension n must be even >= 2, got {self.n}")
        if len(self.betti) != self.n + 1:
            raise SchemaError(
                f"betti must have n+1 = {self.n + 1} entries, got {len(self.betti)}")
        if any((not isinstance(b, int)) or b < 0 for b in self.betti):
            raise SchemaError("betti numbers must be non-negative integers")
        if not (isinstance(self.rank_e, int) and self.rank_e >= 1):
            raise SchemaError(f"rank_e must be a positive integer, got {self.rank_e}")
        if not self.volume > 0:
            raise SchemaError(f"volume must be positive, got {self.volume}")
        for p in self.coclosed:
            if not 0 <= p <= self.n:
                raise SchemaError(f"coclosed degree {p} outside [0, {self.n}]")

    @property
    def witt(self):
        return self.betti[self.n // 2] == 0

    @property
    def duality_warnings(self):
        out = []
        for p in range(self.n + 1):
            if self.betti[p] != self.betti[self.n - p]:
                out.append(f"betti[{p}] = {self.betti[p]} != "
                           f"betti[{self.n - p}] = {self.betti[self.n - p]}")
        return tuple(out)


def euler_char(cs):
    """chi = sum (-1)^p b_p."""
    return sum((-1) ** p * b for p, b in enumerate(cs.betti))


def witt_check(cs):
    """True when the middle Betti number vanishes."""
    return cs.witt


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    required = {"n", "betti", "rank_e", "volume"}
    missing = required - doc.keys()
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")
    coclosed = {}
    for key, pairs in (doc.get("coclosed") or {}).items():
        try:
            p = int(key)
        except ValueError as exc:
            raise SchemaError(f"coclosed key {key!r} is not a degree") from exc
        try:
            coclosed[p] = spectrum(pairs)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad spectrum for degree {p}: {exc}") from exc
    try:
        return CrossSection(
            n=int(doc["n"]),
            betti=tuple(int(b) for b in doc["betti"]),
            rank_e=int(doc["rank_e"]),
            volume=float(doc["volume"]),
            coclosed=coclosed,
            tail_dimension_hint=float(doc.get("tail_dimension_hint", 2.0)),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from exc


def load(path_or_text):
    """Parse a cross-section document from a path or raw JSON text."""
    text = path_or_text
    if not text.lstrip().startswith("{"):
        with open(path_or_text, "r", encoding="utf-8") as fh:
            text = fh.read()
    return loads(text)


def serialize(cs):
    """Round-trip JSON form of the cross section (load(serialize(cs)) == cs)."""
    return json.dumps({
        "n": cs.n,
        "betti": list(cs.betti),
        "rank_e": cs.rank_e,
        "volume": cs.volume,
        "coclosed": {str(p): [[lam, m] for lam, m in sl.eigenvalues]
                     for p, sl in sorted(cs.coclosed.items())},
        "tail_dimension_hint": cs.tail_dimension_hint,
    }, sort_keys=True)


def _get_spectrum(cs, p):
    if p not in cs.coclosed:
        raise MissingSpectrumError(
            f"no coclosed spectrum stored for degree {p}")
    return cs.coclosed[p]


def zeta_ccl(cs, p, s):
    """sum of mu^{-2s} over the coclosed spectrum in degree p.

    Truncated-list sum plus the integrated Weyl tail

        tail = K (d/2) / (s - d/2) * Lambda^{-s},

    with d the declared dimension hint, Lambda the largest listed
    eigenvalue and K the listed count (which calibrates the Weyl constant).
    The tail estimate is accurate to the counting-function fluctuation, so
    callers control accuracy through the list cutoff.  Requires s > d/2;
    an empty spectrum gives 0 for every s.
    """
    sl = _get_spectrum(cs, p)
    if len(sl) == 0:
        return 0.0
    d = cs.tail_dimension_hint
    if not s > d / 2.0:
        raise ValueError(
            f"s = {s} is not beyond the abscissa d/2 = {d / 2}; "
            "the truncated route does not continue past it")
    lams = np.array([l for l, _ in sl.eigenvalues])
    mults = np.array([m for _, m in sl.eigenvalues], dtype=float)
    head = float(np.sum(mults * lams ** (-s)))
    lam_max = float(lams[-1])
    count = float(np.sum(mults))
    tail = count * (d / 2.0) / (s - d / 2.0) * lam_max ** (-s)
    return head + tail


def _square_lattice_r2(m_max):
    """r2[m] = #{(a, b) in Z^2 : a^2 + b^2 = m} for 0 <= m <= m_max."""
    r2 = np.zeros(m_max + 1, dtype=np.int64)
    amax = int(math.isqrt(m_max))
    for a in range(-amax, amax + 1):
        rem = m_max - a * a
        bmax = int(math.isqrt(rem))
        bs = np.arange(-bmax, bmax + 1)
        np.add.at(r2, a * a + bs * bs, 1)
    return r2


def _is_square_lattice_spectrum(sl, rtol=1e-9):
    """Detect eigenvalues scale*(j^2+k^2), (j,k) != 0, with exact
    multiplicities r2(m); returns True when every listed entry matches."""
    if len(sl) == 0:
        return False
    scale = sl.eigenvalues[0][0]
    ms = []
    for lam, mult in sl.eigenvalues:
        m = lam / scale
        mr = round(m)
        if mr < 1 or abs(m - mr) > rtol * max(1.0, m):
            return False
        ms.append((int(mr), mult))
    r2 = _square_lattice_r2(ms[-1][0])
    # every represented m up to the cutoff must be listed with its full
    # multiplicity, and no extraneous entries may appear
    listed = dict(ms)
    for m in range(1, ms[-1][0] + 1):
        if r2[m] == 0:
            if m in listed:
                return False
        elif listed.get(m) != int(r2[m]):
            return False
    return True


def zeta0_ccl(cs, p):
    """zeta(0) of the coclosed spectrum in degree p.

    The value at 0 is invisible to any truncated sum, so it is computed
    only for spectra recognized as scaled square-lattice spectra, where
    the factorization sum' (j^2+k^2)^{-s} = 4 zeta_R(s) beta(s) gives

        zeta(0) = 4 * zeta_R(0) * beta(0) = 4 * (-1/2) * (1/2) = -1,

    independent of the scale (the scale^{-2s} prefactor is 1 at s = 0).
    An empty spectrum has zeta identically 0.  Anything else raises
    Zeta0Unavailable rather than approximating.
    """
    sl = _get_spectrum(cs, p)
    if len(sl) == 0:
        return 0.0
    if _is_square_lattice_spectrum(sl):
        return -1.0
    raise Zeta0Unavailable(
        f"degree-{p} spectrum is not a recognized lattice spectrum; "
        "zeta(0) cannot be extracted from a truncated list")


def generate_flat_torus_2d(side, cutoff):
    """Cross section of a flat square 2-torus with side length ``side``.

    Coclosed nonzero spectra per the Hodge decomposition: degree 0 carries
    the full nonzero function spectrum (2 pi / side)^2 (j^2 + k^2) with
    lattice multiplicities, degree 1 the same list (coexact 1-forms pair
    with functions), degree 2 nothing (coclosed top forms are harmonic).
    All m = j^2 + k^2 up to cutoff^2 are included.
    """
    if not (isinstance(cutoff, int) and cutoff >= 10):
        raise ValueError(f"cutoff must be an integer >= 10, got {cutoff}")
    if not side > 0:
        raise ValueError(f"side must be positive, got {side}")
    base = (2.0 * math.pi / side) ** 2
    r2 = _square_lattice_r2(cutoff * cutoff)
    pairs = [(base * m, int(r2[m]))
             for m in range(1, cutoff * cutoff + 1) if r2[m] > 0]
    sl = spectrum(pairs)
    return CrossSection(
        n=2,
        betti=(1, 2, 1),
        rank_e=1,
        volume=side * side,
        coclosed={0: sl, 1: sl, 2: SpectrumList(())},
        tail_dimension_hint=2.0,
    )
