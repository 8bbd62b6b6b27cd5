"""Finite presentations, abelianization by Smith normal form, and the A_3/A_4 obstruction.

Presentation grammar::

    gens: a b c ; rels: a^2, (a*b)^3, a*b*A, [a,b]

A capital letter is the inverse of the lowercase generator of the same
name; ``x^-1`` also works, and ``[x,y]`` is x^-1 y^-1 x y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import ParseError

Word = tuple[int, ...]  # letters +-(i+1) for generator i


def free_reduce(word) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def exponent_matrix(self) -> list[list[int]]:
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows

    def format_word(self, w: Word) -> str:
        return "*".join(self.generators[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w) or "1"


class _WordParser:
    _TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")

    def __init__(self, text: str, gens: dict[str, int]):
        self.tokens = [m.groups() for m in self._TOKEN.finditer(text) if any(m.groups())]
        self.pos = 0
        self.gens = gens
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, None)

    def take(self, sym: str) -> bool:
        if self.peek()[2] == sym:
            self.pos += 1
            return True
        return False

    def parse(self) -> Word:
        w = self.word()
        if self.pos != len(self.tokens):
            raise ParseError(f"malformed word {self.text!r}")
        return w

    def word(self) -> Word:
        out = list(self.factor())
        while True:
            if self.take("*"):
                out.extend(self.factor())
            elif self.peek()[1] is not None or self.peek()[2] in ("(", "["):
                out.extend(self.factor())
            else:
                return tuple(out)

    def factor(self) -> Word:
        base = self.atom()
        if self.take("^"):
            neg = self.take("-")
            num = self.peek()[0]
            if num is None:
                raise ParseError(f"missing exponent in {self.text!r}")
            self.pos += 1
            k = int(num)
            base = (invert_word(base) if neg else base) * k
        return base

    def atom(self) -> Word:
        num, ident, sym = self.peek()
        if sym == "(":
            self.pos += 1
            w = self.word()
            if not self.take(")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return w
        if sym == "[":
            self.pos += 1
            a = self.word()
            if not self.take(","):
                raise ParseError(f"commutator needs two entries in {self.text!r}")
            b = self.word()
            if not self.take("]"):
                raise ParseError(f"unbalanced bracket in {self.text!r}")
            return invert_word(a) + invert_word(b) + a + b
        if num == "1" and self.pos == 0:
            self.pos += 1
            return ()
        if ident is not None:
            self.pos += 1
            return self.letters(ident)
        raise ParseError(f"malformed word {self.text!r}")

    def letters(self, ident: str) -> Word:
        if ident in self.gens:
            return (self.gens[ident] + 1,)
        if ident.lower() in self.gens and ident != ident.lower() and ident.lower() != ident.upper():
            return (-(self.gens[ident.lower()] + 1),)
        # juxtaposed single-letter generators, e.g. "abA"
        out = []
        for ch in ident:
            if ch in self.gens:
                out.append(self.gens[ch] + 1)
            elif ch.lower() in self.gens and ch.isupper():
                out.append(-(self.gens[ch.lower()] + 1))
            else:
                raise ParseError(f"unknown generator {ident!r}")
        return tuple(out)


def parse_presentation(text: str) -> Presentation:
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    m = re.fullmatch(r"\s*gens\s*:(?P<gens>[^;]*);\s*rels\s*:(?P<rels>.*)", body, flags=re.S)
    if not m:
        raise ParseError("expected 'gens: ... ; rels: ...'")
    names = m.group("gens").split()
    for nm in names:
        if not re.fullmatch(r"[a-z_][A-Za-z0-9_]*", nm):
            raise ParseError(f"generator names must start lowercase: {nm!r}")
    if len(set(names)) != len(names):
        raise ParseError("duplicate generator name")
    gens = {nm: i for i, nm in enumerate(names)}
    rels = []
    for chunk in _split_top_level(m.group("rels")):
        if chunk.strip():
            rels.append(free_reduce(_WordParser(chunk, gens).parse()))
    return Presentation(tuple(names), tuple(rels))


def _split_top_level(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(matrix) -> list[int]:
    """Invariant factors (nonzero diagonal of the SNF, each dividing the next)."""
    A = [list(map(int, row)) for row in matrix]
    if not A or not A[0]:
        return []
    rows, cols = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            piv = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    f = A[i][t] // piv
                    A[i] = [a - f * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    f = A[t][j] // piv
                    for row in A:
                        row[j] -= f * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # pivot must divide the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
            _, pi, pj = min(cand)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 0 or any(d < 2 for d in self.torsion):
            raise ValueError("invalid abelian invariants")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion factors must form a divisibility chain")

    def __str__(self) -> str:
        parts = ["Z"] * (self.rank > 0)
        if self.rank > 1:
            parts = [f"Z^{self.rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "1"


def abelianization(P: Presentation) -> AbelianInvariants:
    factors = smith_normal_form(P.exponent_matrix()) if P.relators else []
    nonzero = [d for d in factors if d]
    rank = len(P.generators) - len(nonzero)
    return AbelianInvariants(rank, tuple(d for d in nonzero if d > 1))


def alternating_obstruction(inv: AbelianInvariants) -> dict[str, bool]:
    """Whether surjections onto A_3 = Z/3 and onto A_4 are ruled out.

    Any map onto A_4 composes with A_4 -> Z/3, so both verdicts coincide.
    """
    blocks = inv.rank == 0 and all(d % 3 for d in inv.torsion)
    return {"blocks_A3": blocks, "blocks_A4": blocks}


def determinantal_divisors(factors: list[int]) -> list[int]:
    out, acc = [], 1
    for d in factors:
        acc *= d
        out.append(acc)
    return out


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
