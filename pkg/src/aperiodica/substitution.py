"""Primitive substitution rules, fixed points and factor atlases.

The two atlas constructions, one through the substitution induced on
length-N windows and one through plain factor collection on a growing
fixed-point prefix, are independent routes to the same set and are
cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .words import Alphabet

DEFAULT_MAX_PREFIX = 1 << 20


class PrefixLimitError(RuntimeError):
    """Window-method factor collection hit the prefix cap before stabilizing."""


@dataclass(frozen=True)
class SubstitutionRule:
    """A letter-to-word map, extended to words by concatenation.

    ``images[i]`` is the image of letter ``i``; every image is a nonempty
    word over the same alphabet.
    """

    alphabet: Alphabet
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(tuple(w) for w in self.images))
        r = len(self.alphabet)
        if len(self.images) != r:
            raise ValueError(f"need one image per letter: got {len(self.images)} for {r} letters")
        for i, img in enumerate(self.images):
            if not img:
                raise ValueError(f"image of {self.alphabet.symbols[i]!r} is empty")
            if min(img) < 0 or max(img) >= r:
                raise ValueError(f"image of {self.alphabet.symbols[i]!r} uses foreign letters")

    @classmethod
    def from_mapping(cls, alphabet, images):
        """Build from a symbol -> image-text mapping."""
        alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
        missing = [s for s in alphabet.symbols if s not in images]
        if missing:
            raise ValueError(f"missing images for {missing}")
        return cls(alphabet, tuple(alphabet.word(images[s]) for s in alphabet.symbols))

    def size(self):
        return len(self.alphabet)


def rule_from_dict(data):
    """Parse the rule file payload {"alphabet": [...], "images": {...}, "seed": ...}.

    Returns ``(rule, seed_index_or_None)``.
    """
    try:
        alphabet = Alphabet(data["alphabet"])
        rule = SubstitutionRule.from_mapping(alphabet, data["images"])
    except KeyError as exc:
        raise ValueError(f"rule file missing key {exc}") from None
    seed = alphabet.index(data["seed"]) if "seed" in data else None
    return rule, seed


_FIBONACCI = SubstitutionRule.from_mapping(Alphabet("ab"), {"a": "ab", "b": "a"})
_THUE_MORSE = SubstitutionRule.from_mapping(Alphabet("ab"), {"a": "ab", "b": "ba"})


def fibonacci_rule():
    """a -> ab, b -> a."""
    return _FIBONACCI


def thue_morse_rule():
    """a -> ab, b -> ba."""
    return _THUE_MORSE


def apply(rule, w):
    """Image of a word: concatenation of the letter images in order."""
    images = rule.images
    if w and (min(w) < 0 or max(w) >= len(images)):
        raise ValueError("word uses letters outside the rule's alphabet")
    out = []
    for a in w:
        out.extend(images[a])
    return tuple(out)


def compose(outer, inner_rule):
    """The rule sending a to outer(inner_rule(a))."""
    if outer.alphabet != inner_rule.alphabet:
        raise ValueError("composition needs a shared alphabet")
    return SubstitutionRule(outer.alphabet, tuple(apply(outer, img) for img in inner_rule.images))


def matrix(rule):
    """Counting matrix: entry (i, j) is how often letter i occurs in image(j).

    Column j therefore sums to the image length of letter j, and the
    matrix of a composition is the product of the matrices.
    """
    r = len(rule.alphabet)
    return tuple(tuple(rule.images[j].count(i) for j in range(r)) for i in range(r))


def matrix_multiply(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def matrix_power(m, k):
    if k < 1:
        raise ValueError("power must be >= 1")
    out = m
    for _ in range(k - 1):
        out = matrix_multiply(out, m)
    return out


def is_primitive(m):
    """Smallest k with all entries of m**k positive, or None.

    The search stops at the Wielandt bound r*r - 2*r + 2, beyond which no
    nonnegative matrix becomes positive if it has not already.
    """
    r = len(m)
    if any(len(row) != r for row in m) or any(e < 0 for row in m for e in row):
        raise ValueError("need a square matrix with nonnegative integer entries")
    bound = r * r - 2 * r + 2
    p = m
    for k in range(1, bound + 1):
        if all(e > 0 for row in p for e in row):
            return k
        p = matrix_multiply(p, m)
    return None


def primitivity_bound(rule):
    r = len(rule.alphabet)
    return r * r - 2 * r + 2


def _image_lengths_after(rule, k):
    """|sigma^k(a)| for every letter a, by iterating the length vector."""
    lens = [len(img) for img in rule.images]
    out = list(lens)
    for _ in range(k - 1):
        out = [sum(out[b] for b in rule.images[a]) for a in range(len(out))]
    return out


def resolve_seed_and_power(rule, seed=None):
    """Smallest power k such that some admissible seed letter s has
    sigma^k(s) starting with s and growing; ties pick the first seed in
    alphabet order.  Raises when no pair exists (e.g. a -> a)."""
    r = len(rule.alphabet)
    first = [img[0] for img in rule.images]
    seeds = range(r) if seed is None else [seed]
    for k in range(1, r + 1):
        lengths = _image_lengths_after(rule, k)
        for s in seeds:
            t = s
            for _ in range(k):
                t = first[t]
            if t == s and lengths[s] > 1:
                return s, k
    raise ValueError("no seed/power pair yields a growing fixed point within the alphabet-size bound")


class FixedPointStream:
    """Lazily extendable prefix of the one-sided fixed point.

    ``sigma**power`` applied to the seed letter starts with the seed, so
    repeated application produces nested prefixes; the buffer is grown by
    substituting one already-known letter at a time.
    """

    def __init__(self, rule, seed=None, power=None):
        if power is None:
            seed, power = resolve_seed_and_power(rule, seed)
        else:
            want, _ = resolve_seed_and_power(rule, seed)
            seed = want if seed is None else seed
        self.rule = rule
        self.seed = seed
        self.power = power
        images = [(a,) for a in range(len(rule.alphabet))]
        for _ in range(power):
            images = [apply(rule, w) for w in images]
        if images[seed][0] != seed or len(images[seed]) < 2:
            raise ValueError("seed/power pair does not generate a growing fixed point")
        self._images = images
        self._buf = list(images[seed])
        self._next = 1

    def prefix(self, n):
        """The first n letters of the fixed point."""
        buf = self._buf
        images = self._images
        while len(buf) < n:
            buf.extend(images[buf[self._next]])
            self._next += 1
        return tuple(buf[:n])


def fixed_point_stream(rule, seed=None, power=None):
    return FixedPointStream(rule, seed=seed, power=power)


def induced_substitute(rule, w):
    """Length-N windows read off the image of a length-N word.

    With m the image length of the first letter of ``w``, the windows at
    offsets 0..m-1 of ``rule(w)`` are returned; later offsets would
    re-count windows produced by the remaining letters of ``w``.
    """
    if not w:
        raise ValueError("induced substitution needs a nonempty word")
    full = apply(rule, w)
    m = len(rule.images[w[0]])
    n = len(w)
    return [full[i : i + n] for i in range(m)]


@dataclass(frozen=True)
class Atlas:
    """All length-N factors of the fixed point of a primitive rule."""

    length: int
    words: frozenset
    iterations: object = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.words)

    def sorted_words(self):
        return sorted(self.words)


def _reachable_letters(rule, seed):
    seen = {seed}
    frontier = [seed]
    while frontier:
        a = frontier.pop()
        for b in rule.images[a]:
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    return frozenset(seen)


def _require_primitive(rule):
    if is_primitive(matrix(rule)) is None:
        raise ValueError(
            f"rule is not primitive: no matrix power up to {primitivity_bound(rule)} is strictly positive"
        )


def _induction_step(rule, prev, n):
    """Stable set of the window map, started from all one-letter right
    extensions of the previous atlas."""
    r = len(rule.alphabet)
    current = {w + (a,) for w in prev.words for a in range(r)}
    limit = len(current)
    iterations = 0
    while True:
        nxt = set()
        for w in current:
            nxt.update(induced_substitute(rule, w))
        iterations += 1
        if nxt == current:
            return Atlas(n, frozenset(current), iterations)
        if iterations > limit:
            raise RuntimeError("window-map iteration failed to stabilize; this is a bug")
        current = nxt


@lru_cache(maxsize=None)
def _atlas_chain(rule, n_max, seed):
    s, _ = resolve_seed_and_power(rule, seed)
    chain = [Atlas(1, frozenset((a,) for a in _reachable_letters(rule, s)))]
    for n in range(2, n_max + 1):
        chain.append(_induction_step(rule, chain[-1], n))
    return tuple(chain)


def atlas_chain(rule, n_max, seed=None):
    """Atlases for every length 1..n_max (index 0 holds length 1)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    _require_primitive(rule)
    return list(_atlas_chain(rule, n_max, seed))


def atlas_by_induction(rule, n, seed=None):
    """Length-n atlas via the induced-substitution stable set."""
    return atlas_chain(rule, n, seed)[-1]


def _ngrams(word, n):
    return {word[i : i + n] for i in range(len(word) - n + 1)}


def atlas_by_window(rule, n, seed=None, max_prefix=None):
    """Length-n atlas by collecting factors of a growing fixed-point prefix.

    The prefix doubles until one full doubling adds no new factor; the
    self-validating stop replaces any a-priori repetitivity constant.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _require_primitive(rule)
    cap = DEFAULT_MAX_PREFIX if max_prefix is None else max_prefix
    stream = FixedPointStream(rule, seed)
    length = max(64, 4 * n)
    if length > cap:
        raise PrefixLimitError(f"prefix cap {cap} is below the starting length {length}")
    factors = _ngrams(stream.prefix(length), n)
    while True:
        length *= 2
        if length > cap:
            raise PrefixLimitError(
                f"factor set of length {n} did not stabilize within the prefix cap {cap}"
            )
        bigger = _ngrams(stream.prefix(length), n)
        if bigger == factors:
            return Atlas(n, frozenset(factors))
        factors = bigger


def complexity(rule, n, seed=None):
    """Number of distinct length-n factors of the fixed point."""
    return len(atlas_by_induction(rule, n, seed).words)
