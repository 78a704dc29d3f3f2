"""Codimension-one cut-and-project point sets over real quadratic fields.

Physical and internal space are both the real line; the lattice is
Z + Z*omega embedded through z -> (z, z~) with z~ the Galois conjugate.
All membership and symmetry decisions are made in exact rational
arithmetic, floats only ever serve as sort keys and renderings.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .words import Alphabet, Word

OMEGA_SQRT = "sqrt"
OMEGA_GOLDEN = "golden"


def _is_squarefree(d):
    if d % 4 == 0:
        return False
    f = 3
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class QuadField:
    """The field extending the rationals by sqrt(d), d squarefree and > 1.

    ``omega_style`` picks the lattice generator: "sqrt" for sqrt(d) and
    "golden" for (1 + sqrt(d)) / 2.
    """

    d: int
    omega_style: str = OMEGA_SQRT

    def __post_init__(self):
        if self.d <= 1 or not _is_squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer > 1, got {self.d}")
        if self.omega_style not in (OMEGA_SQRT, OMEGA_GOLDEN):
            raise ValueError(f"unknown omega style {self.omega_style!r}")

    def element(self, p, q=0):
        return FieldElement(self.d, p, q)

    def sqrt_d(self):
        return FieldElement(self.d, 0, 1)

    def omega(self):
        if self.omega_style == OMEGA_SQRT:
            return FieldElement(self.d, 0, 1)
        return FieldElement(self.d, Fraction(1, 2), Fraction(1, 2))


@total_ordering
class FieldElement:
    """Exact element p + q*sqrt(d) with rational p, q."""

    __slots__ = ("d", "p", "q")

    def __init__(self, d, p=0, q=0):
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "p", Fraction(p))
        object.__setattr__(self, "q", Fraction(q))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.d != self.d:
                raise ValueError(f"mixed fields: sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.d, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.d, self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.d, self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.d, -self.p, -self.q)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.d, self.p * o.p + self.q * o.q * self.d, self.p * o.q + self.q * o.p
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.p * o.p - o.q * o.q * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero field element")
        num = self * o.conjugate()
        return FieldElement(self.d, num.p / norm, num.q / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def conjugate(self):
        """Galois conjugate p - q*sqrt(d)."""
        return FieldElement(self.d, self.p, -self.q)

    def sign(self):
        """Exact sign in {-1, 0, 1}.

        When p and q disagree in sign the winner is whichever of p*p and
        d*q*q is larger; equality cannot happen for q != 0 since sqrt(d)
        is irrational.
        """
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if (p > 0) == (q > 0):
            return 1 if p > 0 else -1
        return (1 if p > 0 else -1) if p * p > q * q * self.d else (1 if q > 0 else -1)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        return hash((self.d, self.p, self.q))

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def is_rational(self):
        return self.q == 0

    def floor(self):
        """Exact integer floor; a float estimate is corrected by exact checks."""
        k = math.floor(float(self))
        while self < k:
            k -= 1
        while not self < k + 1:
            k += 1
        return k

    def ceil(self):
        return -((-self).floor())

    def __repr__(self):
        return f"FieldElement({self.d}, {self.p!r}, {self.q!r})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        return f"{self.p}{'+' if self.q >= 0 else '-'}{abs(self.q)}*sqrt({self.d})"


def star(z):
    """The internal-space image of a lattice-span element: Galois conjugation."""
    return z.conjugate()


@dataclass(frozen=True)
class LatticeSpec:
    """The planar lattice {(z, z~) : z = m + n*omega} for a quadratic field."""

    field: QuadField

    def omega(self):
        return self.field.omega()

    def omega_star(self):
        return self.field.omega().conjugate()

    def element(self, m, n):
        """The lattice point m + n*omega in physical space."""
        return self.field.element(m) + self.omega() * n

    def coords(self, z):
        """(m, n) with z = m + n*omega, or None when z is not in the lattice."""
        return self._coords(z, golden_sign=1)

    def star_coords(self, z):
        """(m, n) with z = m + n*omega~, or None when z is not in the star image."""
        return self._coords(z, golden_sign=-1)

    def _coords(self, z, golden_sign):
        if z.d != self.field.d:
            raise ValueError("element from a different field")
        if self.field.omega_style == OMEGA_SQRT:
            m, n = z.p, golden_sign * z.q
        else:
            n = golden_sign * 2 * z.q
            m = z.p - z.q * golden_sign
        if m.denominator == 1 and n.denominator == 1:
            return int(m), int(n)
        return None

    def from_star(self, z):
        """The lattice point whose star image is z, when z lies in it."""
        mn = self.star_coords(z)
        if mn is None:
            return None
        return self.element(*mn)


@dataclass(frozen=True)
class Window:
    """Closed internal-space interval [lo, hi] with lo < hi.

    Compactness and closure-of-interior hold by construction; the
    boundary is two points and so has measure zero.
    """

    lo: FieldElement
    hi: FieldElement

    def __post_init__(self):
        if self.lo.d != self.hi.d:
            raise ValueError("window endpoints from different fields")
        if not self.lo < self.hi:
            raise ValueError("window needs lo < hi")

    def contains(self, z):
        return not (z < self.lo) and not (self.hi < z)

    def length(self):
        return self.hi - self.lo

    def shift(self, s):
        return Window(self.lo + s, self.hi + s)


def centro_symmetry_center(window):
    """The c with -window + c = window; for an interval this is lo + hi."""
    return window.lo + window.hi


@dataclass(frozen=True)
class GenericityReport:
    """W1..W4 verdicts; ``boundary_hits`` lists endpoints lying in the
    star image of the lattice (the W4 obstructions)."""

    w1: bool
    w2: bool
    w3: bool
    w4: bool
    boundary_hits: tuple

    def __bool__(self):
        return self.w4


def check_generic(window, lattice):
    """Decide W4 exactly: neither endpoint may lie in the lattice's star image."""
    hits = tuple(
        e for e in (window.lo, window.hi) if lattice.star_coords(e) is not None
    )
    return GenericityReport(True, True, True, not hits, hits)


def genericity_shift(window, lattice, denominator=16, max_numerator=64):
    """Smallest grid shift restoring W4, scanning k/denominator with
    increasing |k|, positive first.  None when the grid is exhausted."""
    for k in range(1, max_numerator + 1):
        for s in (Fraction(k, denominator), Fraction(-k, denominator)):
            if check_generic(window.shift(s), lattice).w4:
                return s
    return None


@dataclass(frozen=True)
class ModelSetPatch:
    """The points of the cut-and-project set within [-R, R].

    ``coords`` holds exact (m, n) lattice coordinates sorted by physical
    position; ``values`` are float renderings used only for display and
    as verified sort keys.
    """

    lattice: LatticeSpec
    window: Window
    radius: Fraction
    coords: tuple
    values: tuple

    def __len__(self):
        return len(self.coords)

    def point(self, i):
        return self.lattice.element(*self.coords[i])

    def points(self):
        return [self.lattice.element(m, n) for m, n in self.coords]


def _floor_scaled(a, b, scale, d):
    """floor((a + b*sqrt(d)) / scale) for integers a, b and scale > 0.

    For b != 0 the value is irrational, so floor(b*sqrt(d)) is isqrt of
    b*b*d (shifted by one for negative b) and the outer floor reduces to
    integer division.
    """
    if b == 0:
        return a // scale
    s = math.isqrt(b * b * d)
    t = a + (s if b > 0 else -s - 1)
    return t // scale


def enumerate_patch(lattice, window, radius):
    """All lattice points z with |z| <= radius whose star image lies in the window.

    For each feasible n the two constraints |m + n*omega| <= R and
    lo <= m + n*omega~ <= hi pin m to an exact integer interval, so the
    enumeration is complete by construction.  The inner loop runs on
    integers scaled by a common denominator.
    """
    R = Fraction(radius)
    if R <= 0:
        raise ValueError("radius must be positive")
    field = lattice.field
    d = field.d
    if window.lo.d != d:
        raise ValueError("window and lattice use different fields")
    omega = lattice.omega()
    omega_star = lattice.omega_star()
    spread = omega - omega_star
    n_lo = ((-window.hi - R) / spread).ceil()
    n_hi = ((R - window.lo) / spread).floor()
    parts = (R, omega.p, omega.q, window.lo.p, window.lo.q, window.hi.p, window.hi.q)
    scale = math.lcm(*(f.denominator for f in parts))
    r_i = int(R * scale)
    wp_i, wq_i = int(omega.p * scale), int(omega.q * scale)
    sp_i, sq_i = int(omega_star.p * scale), int(omega_star.q * scale)
    lop_i, loq_i = int(window.lo.p * scale), int(window.lo.q * scale)
    hip_i, hiq_i = int(window.hi.p * scale), int(window.hi.q * scale)
    omega_f = float(omega)
    out = []
    for n in range(n_lo, n_hi + 1):
        m_start = max(
            -_floor_scaled(r_i + n * wp_i, n * wq_i, scale, d),
            -_floor_scaled(n * sp_i - lop_i, n * sq_i - loq_i, scale, d),
        )
        m_end = min(
            _floor_scaled(r_i - n * wp_i, -n * wq_i, scale, d),
            _floor_scaled(hip_i - n * sp_i, hiq_i - n * sq_i, scale, d),
        )
        n_omega_f = n * omega_f
        for m in range(m_start, m_end + 1):
            out.append((m + n_omega_f, m, n))
    out.sort(key=lambda t: t[0])
    _verify_sorted(lattice, out, R)
    return ModelSetPatch(
        lattice,
        window,
        R,
        tuple((m, n) for _, m, n in out),
        tuple(v for v, _, _ in out),
    )


def _verify_sorted(lattice, triples, R):
    """Re-check float ordering exactly wherever two keys are suspiciously close."""
    tol = 1e-9 * (1.0 + float(R))
    for i in range(len(triples) - 1):
        v0, m0, n0 = triples[i]
        v1, m1, n1 = triples[i + 1]
        if v1 - v0 < tol:
            gap = lattice.element(m1 - m0, n1 - n0)
            if not gap.sign() > 0:
                raise RuntimeError("float sort keys disagreed with exact order; this is a bug")


@dataclass(frozen=True)
class GapSequence:
    """Letterized gap list of a patch: ascending distinct gaps get the
    letters a, b, ... in order; ``gaps[i]`` is the exact value of letter i."""

    alphabet: Alphabet
    letters: Word
    gaps: tuple


def _gap_symbols(count):
    if count <= 26:
        return tuple(string.ascii_lowercase[:count])
    return tuple(f"g{i}" for i in range(count))


def gaps_to_letters(patch):
    """Map the patch's consecutive differences onto letters."""
    if len(patch) < 2:
        raise ValueError("need at least two points to read off gaps")
    coords = patch.coords
    steps = [
        (coords[i + 1][0] - coords[i][0], coords[i + 1][1] - coords[i][1])
        for i in range(len(coords) - 1)
    ]
    distinct = sorted(set(steps), key=lambda mn: patch.lattice.element(*mn))
    index = {mn: i for i, mn in enumerate(distinct)}
    alphabet = Alphabet(_gap_symbols(len(distinct)))
    gaps = tuple(patch.lattice.element(*mn) for mn in distinct)
    return GapSequence(alphabet, tuple(index[s] for s in steps), gaps)


def inversion_witness(patch, max_shift=None, min_overlap_points=2):
    """A lattice translation t with -patch = patch + t on the span where
    both sides are known, or None.

    When the window's centro-symmetry center lies in the star image of
    the lattice an exact candidate exists and is tried first; otherwise
    candidates are read off the data as (-z_mid) - z_j for patch points
    z_j near the reflection of the most central point z_mid.
    """
    if len(patch) == 0:
        return None
    lattice = patch.lattice
    candidates = []
    center = centro_symmetry_center(patch.window)
    exact = lattice.from_star(center)
    if exact is not None:
        candidates.append(-exact)
    if len(patch) >= 2:
        values = patch.values
        mid = min(range(len(values)), key=lambda i: abs(values[i]))
        mirror = -values[mid]
        cap = float(patch.radius) / 2 if max_shift is None else float(max_shift)
        mm, nm = patch.coords[mid]
        data = []
        for (m, n), v in zip(patch.coords, values):
            shift = -mirror - v
            if abs(shift) <= cap:
                data.append((abs(shift), (-mm - m, -nm - n)))
        data.sort()
        candidates.extend(lattice.element(*mn) for _, mn in data)
    seen = set()
    for t in candidates:
        key = (t.p, t.q)
        if key in seen:
            continue
        seen.add(key)
        if _check_inversion(patch, t, min_overlap_points):
            return t
    return None


def _check_inversion(patch, t, min_overlap_points):
    """Exact set comparison of -patch and patch + t on the overlap where
    both sides are fully determined by the data."""
    mn = patch.lattice.coords(t)
    if mn is None:
        return False
    tm, tn = mn
    t_f = float(t)
    R = patch.radius
    lo = -R + (t if t.sign() > 0 else 0)
    hi = R + (t if t.sign() < 0 else 0)
    if not lo < hi:
        return False
    lo_f, hi_f = float(lo), float(hi)
    tol = 1e-9 * (1.0 + float(R))
    lattice = patch.lattice
    negated = set()
    shifted = set()
    for (m, n), v in zip(patch.coords, patch.values):
        if _overlap_member(lattice, -m, -n, -v, lo, hi, lo_f, hi_f, tol):
            negated.add((-m, -n))
        if _overlap_member(lattice, m + tm, n + tn, v + t_f, lo, hi, lo_f, hi_f, tol):
            shifted.add((m + tm, n + tn))
    return len(negated) >= min_overlap_points and negated == shifted


def _overlap_member(lattice, m, n, value_f, lo, hi, lo_f, hi_f, tol):
    if lo_f + tol < value_f < hi_f - tol:
        return True
    if value_f < lo_f - tol or value_f > hi_f + tol:
        return False
    z = lattice.element(m, n)
    return not (z < lo) and not (hi < z)


def _manacher(word):
    """Radii of maximal odd and even palindromes at every position.

    d1[i] counts letters from the center of the longest odd palindrome
    centered at i (inclusive); d2[i] is the half-length of the longest
    even palindrome whose center falls between i-1 and i.
    """
    n = len(word)
    d1 = [0] * n
    left, right = 0, -1
    for i in range(n):
        k = 1 if i > right else min(d1[left + right - i], right - i + 1)
        while i - k >= 0 and i + k < n and word[i - k] == word[i + k]:
            k += 1
        d1[i] = k
        if i + k - 1 > right:
            left, right = i - k + 1, i + k - 1
    d2 = [0] * n
    left, right = 0, -1
    for i in range(n):
        k = 0 if i > right else min(d2[left + right - i + 1], right - i + 1)
        while i - k - 1 >= 0 and i + k < n and word[i - k - 1] == word[i + k]:
            k += 1
        d2[i] = k
        if i + k - 1 > right:
            left, right = i - k, i + k - 1
    return d1, d2


def palindrome_scan(word, center_range=None):
    """Maximal palindromic factors as (doubled_center, length) pairs.

    A factor occupying positions i..j is centered at (i + j) / 2; centers
    are reported doubled so half-integers stay exact.  Results are sorted
    by length descending, then by center.  ``center_range`` is an
    inclusive (lo, hi) filter on the (undoubled) center.
    """
    d1, d2 = _manacher(word)
    out = []
    for i in range(len(word)):
        out.append((2 * i, 2 * d1[i] - 1))
        if d2[i] > 0:
            out.append((2 * i - 1, 2 * d2[i]))
    if center_range is not None:
        lo, hi = center_range
        out = [(c2, ln) for c2, ln in out if 2 * lo <= c2 <= 2 * hi]
    out.sort(key=lambda t: (-t[1], t[0]))
    return out


def strong_palindromicity_report(palindromes, growth_rate):
    """Diagnostic ratios exp(B * |center|) / length for recorded palindromes.

    Purely descriptive: a finite list can suggest but never certify the
    vanishing of the ratios.
    """
    if growth_rate <= 0:
        raise ValueError("growth rate B must be positive")
    rows = []
    for c2, length in palindromes:
        center = abs(c2) / 2.0
        try:
            ratio = math.exp(growth_rate * center) / length
        except OverflowError:
            ratio = math.inf
        rows.append((c2, length, ratio))
    rows.sort(key=lambda t: (abs(t[0]), -t[1]))
    return rows
