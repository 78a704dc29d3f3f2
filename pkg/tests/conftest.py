"""Shared brute-force oracles, deliberately independent of the code paths
they check: factor sets come from plain repeated substitution, palindrome
maxima from an all-substrings scan.  Also collects the acceptance
criterion verdicts and prints them in the terminal summary."""

from aperiodica.substitution import apply
from aperiodica.words import is_palindrome

acceptance_lines = []


def record_acceptance(line):
    acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.line(line)


def expanded_word(rule, seed, min_length):
    """sigma^j(seed) for the first j that reaches min_length letters."""
    w = (seed,)
    while len(w) < min_length:
        grown = apply(rule, w)
        if len(grown) == len(w):
            raise ValueError("rule does not grow from this seed")
        w = grown
    return w


def brute_factors(rule, seed, n, min_length=10000):
    """All length-n factors of a long plain expansion."""
    w = expanded_word(rule, seed, min_length)
    return frozenset(w[i : i + n] for i in range(len(w) - n + 1))


def brute_maximal_palindromes(word):
    """(doubled_center, length) of the longest palindrome at every center,
    by checking every substring."""
    best = {}
    n = len(word)
    for i in range(n):
        for j in range(i, n):
            if is_palindrome(word[i : j + 1]):
                c2 = i + j
                length = j - i + 1
                if best.get(c2, 0) < length:
                    best[c2] = length
    return best
