"""Ultimately periodic subsets of the naturals.

A set is stored canonically as ``(threshold, prefix, period, residues)``:
``k`` is a member iff ``k < threshold and k in prefix`` or
``k >= threshold and k % period in residues``.  Canonical means the period
is the least one and the threshold the least one for that period.  Finite
sets have no residues and period 1.

Expressions
-----------
::

    atom  := "fin{" ints "}" | "mod(" p "," "{" residues "}" ")" | "omega"
    expr  := term (("|" | "\\") term)*
    term  := unary ("&" unary)*
    unary := "~" unary | "(" expr ")" | atom

``~`` is complement, ``&`` intersection, ``|`` union and ``\\`` difference.
``&`` binds tighter than ``|`` and ``\\``, which associate to the left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(p: int) -> list[int]:
    small = [d for d in range(1, int(p**0.5) + 1) if p % d == 0]
    return sorted(set(small + [p // d for d in small]))


@dataclass(frozen=True)
class UPSet:
    threshold: int
    prefix: frozenset[int]
    period: int
    residues: frozenset[int]

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        if k < self.threshold:
            return k in self.prefix
        return k % self.period in self.residues

    @property
    def is_finite(self) -> bool:
        return not self.residues

    def window(self) -> int:
        """Length of an initial segment that, with the period, determines the set."""
        return self.threshold + self.period

    def members(self, stop: int) -> list[int]:
        return [k for k in range(stop) if k in self]

    def elements_finite(self) -> list[int]:
        if not self.is_finite:
            raise ValueError("set is infinite")
        return sorted(self.prefix)

    def __str__(self) -> str:
        return render(self)


def canonicalize(threshold: int, prefix, period: int, residues) -> UPSet:
    """Canonical form of the set described by a raw (not necessarily minimal) tuple."""
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    res = frozenset(r % period for r in residues)
    pre = frozenset(k for k in prefix if 0 <= k < threshold)
    p = period
    for d in _divisors(period):
        if all((r in res) == ((r + d) % period in res) for r in range(period)):
            p = d
            break
    res = frozenset(r % p for r in res)
    t = threshold
    while t > 0 and ((t - 1) in pre) == ((t - 1) % p in res):
        t -= 1
    return UPSet(t, frozenset(k for k in pre if k < t), p, res)


def _from_membership(threshold: int, period: int, member) -> UPSet:
    prefix = [k for k in range(threshold) if member(k)]
    residues = [k % period for k in range(threshold, threshold + period) if member(k)]
    return canonicalize(threshold, prefix, period, residues)


def finite(elements) -> UPSet:
    elems = [int(e) for e in elements]
    if any(e < 0 for e in elems):
        raise ValueError("elements must be natural numbers")
    return canonicalize(max(elems, default=-1) + 1, elems, 1, ())


def periodic(period: int, residues) -> UPSet:
    return canonicalize(0, (), period, residues)


OMEGA = periodic(1, {0})
EMPTY = finite(())


# -- boolean algebra ---------------------------------------------------------


def _combine(A: UPSet, B: UPSet, op) -> UPSet:
    t = max(A.threshold, B.threshold)
    p = _lcm(A.period, B.period)
    return _from_membership(t, p, lambda k: op(k in A, k in B))


def union(A: UPSet, B: UPSet) -> UPSet:
    return _combine(A, B, lambda a, b: a or b)


def intersect(A: UPSet, B: UPSet) -> UPSet:
    return _combine(A, B, lambda a, b: a and b)


def difference(A: UPSet, B: UPSet) -> UPSet:
    return _combine(A, B, lambda a, b: a and not b)


def complement(A: UPSet) -> UPSet:
    return _from_membership(A.threshold, A.period, lambda k: k not in A)


def is_subset(A: UPSet, B: UPSet) -> bool:
    return difference(A, B) == EMPTY


def almost_subset(A: UPSet, B: UPSet) -> bool:
    """``A \\ B`` is finite."""
    return difference(A, B).is_finite


def almost_equal(A: UPSet, B: UPSet) -> bool:
    return almost_subset(A, B) and almost_subset(B, A)


def compatible(A: UPSet, B: UPSet) -> bool:
    """Some infinite set lies below both, i.e. ``A & B`` is infinite."""
    return not intersect(A, B).is_finite


# -- witnesses ---------------------------------------------------------------


def split(A: UPSet) -> tuple[UPSet, UPSet]:
    """Deal A's elements alternately into two disjoint infinite halves."""
    if A.is_finite:
        raise ValueError("cannot split a finite set")
    t, p = A.threshold, 2 * A.period
    rank = {}
    count = 0
    for k in range(t + p):
        if k in A:
            rank[k] = count
            count += 1
    even = _from_membership(t, p, lambda k: k in rank and rank[k] % 2 == 0)
    return even, difference(A, even)


@dataclass(frozen=True)
class SmVerdict:
    leq: bool
    witness: UPSet | None = None
    samples_checked: int = 0


def sample_infinite_subsets(A: UPSet, depth: int = 2) -> list[UPSet]:
    """Deterministic infinite subsets of A: split halves and residue slices."""
    out = [A]
    frontier = [A]
    for _ in range(depth):
        nxt = []
        for S in frontier:
            nxt.extend(split(S))
        out.extend(nxt)
        frontier = nxt
    for m in (2, 3, 5):
        for r in range(m):
            S = intersect(A, periodic(m, {r}))
            if not S.is_finite:
                out.append(S)
                out.append(difference(S, finite(range(S.threshold + 1))))
    return out


def sm_leq_witness(A: UPSet, B: UPSet) -> SmVerdict:
    """Decide ``A <=* B`` in the separative modification of infinite sets under inclusion.

    When A is not almost contained in B, ``A \\ B`` is an infinite subset of
    A disjoint from B and refutes the order.  Otherwise every infinite
    subset of A meets B infinitely; this is confirmed on a deterministic
    sample of subsets.
    """
    if A.is_finite or B.is_finite:
        raise ValueError("both sets must be infinite")
    if not almost_subset(A, B):
        return SmVerdict(False, difference(A, B))
    samples = sample_infinite_subsets(A)
    for C in samples:
        if not compatible(C, B):
            raise AssertionError(f"{render(C)} lies below {render(A)} but misses {render(B)}")
    return SmVerdict(True, None, len(samples))


def chain_lower_bound(chain) -> UPSet:
    """Infinite set almost contained in every member of an almost-decreasing chain.

    For a finite chain the greedy picks of :func:`diagonal_picks` settle,
    once the chain is exhausted, into the intersection of all members, so
    that intersection is returned.  It is infinite because every member
    almost contains the last one.
    """
    chain = list(chain)
    if not chain:
        raise ValueError("empty chain")
    for i, A in enumerate(chain):
        if A.is_finite:
            raise ValueError(f"chain member {i} is finite")
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            if not almost_subset(chain[j], chain[i]):
                raise ValueError(f"chain is not almost decreasing at indices ({i}, {j})")
    bound = chain[0]
    for A in chain[1:]:
        bound = intersect(bound, A)
    assert not bound.is_finite
    return bound


# -- text form ---------------------------------------------------------------


def _fmt(nums) -> str:
    return "{" + ",".join(str(k) for k in sorted(nums)) + "}"


def render(A: UPSet) -> str:
    if A.is_finite:
        return "fin" + _fmt(A.prefix)
    base = "omega" if A.period == 1 else f"mod({A.period},{_fmt(A.residues)})"
    periodic_head = {k for k in range(A.threshold) if k % A.period in A.residues}
    added = A.prefix - periodic_head
    removed = periodic_head - A.prefix
    text = base
    if added:
        text += " | fin" + _fmt(added)
    if removed:
        text += " \\ fin" + _fmt(removed)
    return text


class UPSetSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|(fin|mod|omega)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("word", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "{}(),&|\\~":
                raise UPSetSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(("sym", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise UPSetSyntaxError(f"expected {want!r}, found {got}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> UPSet:
        value = self.expr()
        self.take("end")
        return value

    def expr(self) -> UPSet:
        value = self.term()
        while self.peek()[0] == "sym" and self.peek()[1] in "|\\":
            op = self.take("sym")[1]
            rhs = self.term()
            value = union(value, rhs) if op == "|" else difference(value, rhs)
        return value

    def term(self) -> UPSet:
        value = self.unary()
        while self.peek()[:2] == ("sym", "&"):
            self.take("sym", "&")
            value = intersect(value, self.unary())
        return value

    def unary(self) -> UPSet:
        kind, val, pos = self.peek()
        if (kind, val) == ("sym", "~"):
            self.take("sym", "~")
            return complement(self.unary())
        if (kind, val) == ("sym", "("):
            self.take("sym", "(")
            value = self.expr()
            self.take("sym", ")")
            return value
        if kind == "word":
            self.take("word")
            if val == "omega":
                return OMEGA
            if val == "fin":
                return finite(self.int_set())
            self.take("sym", "(")
            ptok = self.take("int")
            if ptok[1] == 0:
                raise UPSetSyntaxError("period must be positive", ptok[2])
            self.take("sym", ",")
            residues_pos = self.peek()[2]
            residues = self.int_set()
            bad = [r for r in residues if r >= ptok[1]]
            if bad:
                raise UPSetSyntaxError(
                    f"residue {bad[0]} not below period {ptok[1]}", residues_pos
                )
            self.take("sym", ")")
            return periodic(ptok[1], residues)
        got = "end of input" if kind == "end" else repr(val)
        raise UPSetSyntaxError(f"expected a set expression, found {got}", pos)

    def int_set(self) -> list[int]:
        self.take("sym", "{")
        out = []
        if self.peek()[:2] != ("sym", "}"):
            out.append(self.take("int")[1])
            while self.peek()[:2] == ("sym", ","):
                self.take("sym", ",")
                out.append(self.take("int")[1])
        self.take("sym", "}")
        return out


def parse(text: str) -> UPSet:
    return _Parser(text).parse()


def diagonal_picks(chain, count: int) -> list[int]:
    """First ``count`` greedy picks: each is the least point above the previous
    pick lying in every chain member up to its own stage (the last member
    repeats once the chain is exhausted)."""
    chain = list(chain)
    picks: list[int] = []
    running = chain[0]
    for stage in range(count):
        if 0 < stage < len(chain):
            running = intersect(running, chain[stage])
        k = picks[-1] + 1 if picks else 0
        while k not in running:
            k += 1
            if running.is_finite and k >= running.threshold:
                raise ValueError("chain members meet in a finite set")
        picks.append(k)
    return picks
