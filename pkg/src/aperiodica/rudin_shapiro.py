"""Both constructions of the Rudin-Shapiro sequence and its factor table.

The arithmetic route counts adjacent 1-1 bit pairs; the substitution
route runs the four-letter rule a -> ab, b -> ac, c -> db, d -> dc and
collapses letters through ``phi``.  Both give the same binary sequence,
which the test suite checks far beyond the displayed prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .substitution import Atlas, FixedPointStream, SubstitutionRule, atlas_chain
from .words import Alphabet, exclusion_verdict, is_palindrome

BINARY_ALPHABET = Alphabet(("0", "1"))
QUATERNARY_ALPHABET = Alphabet("abcd")

_RULE = SubstitutionRule.from_mapping(
    QUATERNARY_ALPHABET, {"a": "ab", "b": "ac", "c": "db", "d": "dc"}
)

YES = "yes"
NO = "no"
BLANK = ""


def quaternary_rule():
    """The four-letter rule whose fixed point projects onto the binary sequence."""
    return _RULE


def block_count_a(n):
    """Number of (possibly overlapping) 11 blocks in the binary expansion of n."""
    if n < 0:
        raise ValueError("defined for n >= 0")
    return (n & (n >> 1)).bit_count()


def rs_binary_prefix(length):
    """First ``length`` binary values; entry n is the parity of block_count_a(n)."""
    if length < 0:
        raise ValueError("length must be >= 0")
    return tuple((n & (n >> 1)).bit_count() & 1 for n in range(length))


def phi(w):
    """Letterwise collapse a, b -> 0 and c, d -> 1."""
    if w and (min(w) < 0 or max(w) > 3):
        raise ValueError("phi expects letters of the four-letter alphabet")
    return tuple(0 if a < 2 else 1 for a in w)


def quaternary_prefix(length):
    """Prefix of the fixed point of the four-letter rule, seed a."""
    return FixedPointStream(_RULE, seed=0).prefix(length)


def equivalence_check(length):
    """True iff the two constructions agree on the first ``length`` symbols."""
    if length < 1:
        raise ValueError("length must be >= 1")
    return phi(quaternary_prefix(length)) == rs_binary_prefix(length)


def binary_atlas(n):
    """Length-n factors of the binary sequence, as the phi image of the
    quaternary atlas."""
    quaternary = atlas_chain(_RULE, n)[-1]
    return Atlas(n, frozenset(phi(w) for w in quaternary.words))


@dataclass(frozen=True)
class Table1Row:
    """Complexities and palindrome statuses of both versions at one length.

    A status is "yes", "no", or blank ("") once the exclusion pair for
    that column lies strictly below the row's length.
    """

    n: int
    count4: int
    pal4: str
    count2: int
    pal2: str


def _statuses(has_pal):
    """Per-length yes/no/blank, blanking rows past the first excluding pair."""
    n_max = len(has_pal)
    pair = None
    for n in range(1, n_max):
        if not has_pal[n - 1] and not has_pal[n]:
            pair = n
            break
    out = []
    for n in range(1, n_max + 1):
        if pair is not None and n > pair + 1:
            out.append(BLANK)
        else:
            out.append(YES if has_pal[n - 1] else NO)
    return out


def table1(n_max=20):
    """Factor counts and palindrome statuses for lengths 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    chain = atlas_chain(_RULE, n_max)
    quaternary = [a.words for a in chain]
    binary = [frozenset(phi(w) for w in words) for words in quaternary]
    pal4 = _statuses([any(is_palindrome(w) for w in words) for words in quaternary])
    pal2 = _statuses([any(is_palindrome(w) for w in words) for words in binary])
    return [
        Table1Row(n, len(quaternary[n - 1]), pal4[n - 1], len(binary[n - 1]), pal2[n - 1])
        for n in range(1, n_max + 1)
    ]


def palindrome_verdicts(n_max=20):
    """Exclusion verdicts (quaternary, binary) from atlases up to n_max."""
    chain = atlas_chain(_RULE, n_max)
    quaternary = {a.length: a.words for a in chain}
    binary = {a.length: frozenset(phi(w) for w in a.words) for a in chain}
    return exclusion_verdict(quaternary), exclusion_verdict(binary)


def golden_table1():
    """The reference 20-row table shipped with the package."""
    text = resources.files("aperiodica").joinpath("data/rs_table1.tsv").read_text()
    rows = []
    for line in text.splitlines()[1:]:
        if not line.strip():
            continue
        cells = line.split("\t")
        cells += [""] * (5 - len(cells))
        n, count4, pal4, count2, pal2 = cells
        rows.append(Table1Row(int(n), int(count4), pal4, int(count2), pal2))
    return rows
