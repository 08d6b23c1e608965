"""Finitely presented groups: words, presentations, Smith normal form,
abelianization, and sign homomorphisms onto Z/2.

Words are flat sequences of signed 1-based generator indices (positive =
generator, negative = its inverse), always stored freely reduced.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class PresentationError(ValueError):
    """Malformed presentation data: unknown generator, bad index, duplicate name."""


def _reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for letter in letters:
        if letter == 0:
            raise PresentationError("0 is not a valid generator letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word over signed generator indices."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce_letters(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def conjugate(self, by: "Word") -> "Word":
        return by * self * by.inverse()

    def is_empty(self) -> bool:
        return not self.letters

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for letter in self.letters:
            sums[abs(letter) - 1] += 1 if letter > 0 else -1
        return sums

    def shift(self, offset: int) -> "Word":
        """Re-index letters by +offset (embedding into a larger generating set)."""
        return Word(tuple(x + offset if x > 0 else x - offset for x in self.letters))


def free_reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a raw signed-index sequence. Idempotent."""
    return Word(tuple(letters))


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"duplicate generator names in {self.name!r}")
        for rel in self.relators:
            if rel.max_index() > len(self.generators):
                raise PresentationError(
                    f"relator {rel.letters} references generator "
                    f"#{rel.max_index()} but only {len(self.generators)} exist")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def word(self, letters: Iterable[int]) -> Word:
        w = Word(tuple(letters))
        if w.max_index() > self.ngens:
            raise PresentationError(f"letter out of range for {self.name!r}")
        return w

    def gen_index(self, name: str) -> int:
        """1-based index of a generator by name."""
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise PresentationError(f"unknown generator {name!r} in {self.name!r}") from None

    def spell(self, w: Word) -> str:
        parts = []
        for letter in w.letters:
            name = self.generators[abs(letter) - 1]
            parts.append(name if letter > 0 else f"{name}^-1")
        return " ".join(parts) if parts else "1"


def quotient(p: Presentation, extra: Sequence[Word], name: str | None = None) -> Presentation:
    """Presentation of p modulo the normal closure of the extra words."""
    for w in extra:
        if w.max_index() > p.ngens:
            raise PresentationError("quotient word uses unknown generator")
    if not extra:
        return p
    return Presentation(name or f"{p.name}_mod", p.generators,
                        p.relators + tuple(extra))


# --------------------------------------------------------------------------
# integer matrices and Smith normal form


class IntMatrix:
    """Dense integer matrix, row-major, arbitrary precision."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[int]):
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError("entry count must equal rows*cols")
        self.rows = rows
        self.cols = cols
        self.entries = [int(e) for e in entries]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = [x for row in rows for x in row]
        return IntMatrix(r, c, flat)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        m = IntMatrix(n, n, [0] * (n * n))
        for i in range(n):
            m[i, i] = 1
        return m

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij: tuple[int, int], v: int) -> None:
        i, j = ij
        self.entries[i * self.cols + j] = int(v)

    def row(self, i: int) -> list[int]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, self.entries)

    def transpose(self) -> "IntMatrix":
        out = IntMatrix(self.cols, self.rows, [0] * len(self.entries))
        for i in range(self.rows):
            for j in range(self.cols):
                out[j, i] = self[i, j]
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = IntMatrix(self.rows, other.cols, [0] * (self.rows * other.cols))
        for i in range(self.rows):
            for k in range(self.cols):
                a = self[i, k]
                if a:
                    for j in range(other.cols):
                        out[i, j] += a * other[k, j]
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def det(self) -> int:
        """Exact determinant (Bareiss fraction-free elimination)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return abs(self.det()) == 1

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with D = U*A*V, U and V unimodular, D diagonal, d_i | d_{i+1}.

    Pivots are chosen with smallest nonzero absolute value, ties broken by
    row-major position, which makes the output deterministic.
    """
    m = a.copy()
    u = IntMatrix.identity(a.rows)
    v = IntMatrix.identity(a.cols)
    R, C = a.rows, a.cols

    def swap_rows(i, j):
        if i != j:
            for M in (m, u):
                for c in range(M.cols):
                    M[i, c], M[j, c] = M[j, c], M[i, c]

    def swap_cols(i, j):
        if i != j:
            for M, rows in ((m, R), (v, v.rows)):
                for r in range(rows):
                    M[r, i], M[r, j] = M[r, j], M[r, i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for c in range(C):
            m[dst, c] += q * m[src, c]
        for c in range(u.cols):
            u[dst, c] += q * u[src, c]

    def add_col(dst, src, q):
        for r in range(R):
            m[r, dst] += q * m[r, src]
        for r in range(v.rows):
            v[r, dst] += q * v[r, src]

    def negate_row(i):
        for c in range(C):
            m[i, c] = -m[i, c]
        for c in range(u.cols):
            u[i, c] = -u[i, c]

    def find_pivot(t):
        best = None
        for i in range(t, R):
            for j in range(t, C):
                e = m[i, j]
                if e and (best is None or abs(e) < abs(m[best[0], best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(R, C):
        piv = find_pivot(t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if m[t, t] < 0:
            negate_row(t)
        # clear row and column t; re-pivot whenever a smaller remainder shows up
        while True:
            dirty = False
            for i in range(t + 1, R):
                if m[i, t]:
                    add_row(i, t, -(m[i, t] // m[t, t]))
                    if m[i, t]:
                        swap_rows(t, i)  # remainder is smaller than the pivot
                        if m[t, t] < 0:
                            negate_row(t)
                        dirty = True
            for j in range(t + 1, C):
                if m[t, j]:
                    add_col(j, t, -(m[t, j] // m[t, t]))
                    if m[t, j]:
                        swap_cols(t, j)
                        dirty = True
                        if m[t, t] < 0:
                            negate_row(t)
            if not dirty:
                break
        # enforce divisibility of the remaining block by the pivot
        fixed = False
        for i in range(t + 1, R):
            for j in range(t + 1, C):
                if m[i, j] % m[t, t]:
                    add_row(t, i, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue  # redo the clearing loop at the same t
        t += 1
    return u, m, v


def diagonal_of(d: IntMatrix) -> list[int]:
    return [d[i, i] for i in range(min(d.rows, d.cols))]


# --------------------------------------------------------------------------
# abelian invariants


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: Z^free_rank x prod Z/d_i, d_i | d_{i+1}."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if i and d % self.torsion[i - 1]:
                raise ValueError("torsion coefficients must form a divisor chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None if infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "1"


def relator_matrix(p: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    rows = [w.exponent_sums(p.ngens) for w in p.relators]
    if not rows:
        rows = []
    flat = [x for row in rows for x in row]
    return IntMatrix(len(p.relators), p.ngens, flat)


def abelianization(p: Presentation) -> AbelianGroup:
    """Abelian invariants of the presented group, via Smith normal form."""
    a = relator_matrix(p)
    if a.rows == 0:
        return AbelianGroup(p.ngens)
    _, d, _ = smith_normal_form(a)
    diag = diagonal_of(d)
    nonzero = [x for x in diag if x]
    return AbelianGroup(p.ngens - len(nonzero),
                        tuple(x for x in nonzero if x >= 2))


# --------------------------------------------------------------------------
# homomorphisms onto {+1, -1}


@dataclass(frozen=True)
class SignHom:
    """Assignment of +-1 to each generator of a presentation."""

    presentation: Presentation
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != self.presentation.ngens:
            raise PresentationError("one sign per generator required")
        if any(s not in (-1, 1) for s in self.signs):
            raise PresentationError("signs must be +1 or -1")

    def sign_of(self, gen_name: str) -> int:
        return self.signs[self.presentation.gen_index(gen_name) - 1]

    def evaluate(self, w: Word) -> int:
        out = 1
        for letter in w.letters:
            out *= self.signs[abs(letter) - 1]
        return out

    def holds(self) -> bool:
        return all(self.evaluate(r) == 1 for r in self.presentation.relators)

    def is_trivial(self) -> bool:
        return all(s == 1 for s in self.signs)

    def kernel_words(self) -> list[Word]:
        """Generators of the index-2 kernel (Schreier generators over {1, g0}).

        g0 is the first generator with sign -1.
        """
        if self.is_trivial():
            raise PresentationError("trivial sign map has no index-2 kernel")
        g0 = next(i + 1 for i, s in enumerate(self.signs) if s == -1)
        words: list[Word] = [Word((g0, g0))]
        for i, s in enumerate(self.signs):
            g = i + 1
            if s == 1:
                words.append(Word((g,)))
                words.append(Word((g0, g, -g0)))
            elif g != g0:
                words.append(Word((g, -g0)))
                words.append(Word((g0, g)))
        return words


def sign_homs(p: Presentation) -> list[SignHom]:
    """All nontrivial homomorphisms to {+1,-1}, lexicographic in the sign vectors."""
    out = []
    for signs in itertools.product((-1, 1), repeat=p.ngens):
        if all(s == 1 for s in signs):
            continue
        h = SignHom(p, signs)
        if h.holds():
            out.append(h)
    return out
