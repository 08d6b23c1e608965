"""Words, Smith normal form, abelianization, and sign homomorphisms."""
import itertools
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbiforge.fixtures import load_fixture
from orbiforge.fpgroup import (AbelianGroup, IntMatrix, Presentation,
                               PresentationError, Word, abelianization,
                               diagonal_of, free_reduce, quotient, sign_homs,
                               smith_normal_form)

letters = st.lists(st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0),
                   max_size=20)


class TestWords:
    def test_cancellation(self):
        assert free_reduce([1, -1, 2]).letters == (2,)

    def test_no_cancellation(self):
        assert free_reduce([1, 2, 1, 2]).letters == (1, 2, 1, 2)

    def test_full_collapse(self):
        assert free_reduce([2, -1, 1, -2]).is_empty()

    @given(letters)
    @settings(max_examples=100)
    def test_idempotent(self, raw):
        once = free_reduce(raw)
        assert free_reduce(once.letters) == once

    @given(letters)
    @settings(max_examples=100)
    def test_inverse_cancels(self, raw):
        w = free_reduce(raw)
        assert (w * w.inverse()).is_empty()

    @given(letters, letters, letters)
    @settings(max_examples=60)
    def test_concatenation_associative(self, a, b, c):
        x, y, z = Word(tuple(a)), Word(tuple(b)), Word(tuple(c))
        assert (x * y) * z == x * (y * z)

    def test_unknown_generator_rejected(self):
        p = Presentation("t", ("a", "b"), ())
        with pytest.raises(PresentationError):
            p.word([3])


def _minor_gcd_invariant_factors(rows):
    """Independent oracle: d_k = gcd(k-minors) / gcd((k-1)-minors)."""
    m = IntMatrix.from_rows(rows)
    r, c = m.rows, m.cols
    factors = []
    prev = 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for ris in itertools.combinations(range(r), k):
            for cis in itertools.combinations(range(c), k):
                sub = IntMatrix.from_rows(
                    [[m[i, j] for j in cis] for i in ris])
                g = gcd(g, abs(sub.det()))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=c, max_size=c),
            min_size=r, max_size=r)))


class TestSmithNormalForm:
    def test_already_diagonal(self):
        u, d, v = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 2]]))
        assert diagonal_of(d) == [2, 2]
        assert u == IntMatrix.identity(2) and v == IntMatrix.identity(2)

    def test_classic_2x2(self):
        # oracle: d1 = gcd of entries = 1, d1*d2 = |det| = 2
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert _minor_gcd_invariant_factors([[1, 2], [3, 4]]) == [1, 2]
        u, d, v = smith_normal_form(a)
        assert diagonal_of(d) == [1, 2]
        assert u @ a @ v == d

    def test_zero_matrix(self):
        a = IntMatrix.from_rows([[0, 0], [0, 0]])
        u, d, v = smith_normal_form(a)
        assert diagonal_of(d) == [0, 0]
        assert u == IntMatrix.identity(2) and v == IntMatrix.identity(2)

    @given(small_matrices)
    @settings(max_examples=120, deadline=None)
    def test_postconditions_and_oracle(self, rows):
        a = IntMatrix.from_rows(rows)
        u, d, v = smith_normal_form(a)
        assert u.is_unimodular() and v.is_unimodular()
        assert u @ a @ v == d
        diag = diagonal_of(d)
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    assert d[i, j] == 0
        nonzero = [x for x in diag if x]
        assert all(x > 0 for x in nonzero)
        for i in range(1, len(nonzero)):
            assert nonzero[i] % nonzero[i - 1] == 0
        assert nonzero == _minor_gcd_invariant_factors(rows)


class TestAbelianization:
    def test_tetrahedral_group(self):
        gamma = load_fixture("tetrahedral")
        assert abelianization(gamma) == AbelianGroup(0, (2, 2))

    def test_figure_eight_knot_group(self):
        fig8 = load_fixture("figure8")
        assert abelianization(fig8) == AbelianGroup(1)

    def test_cyclic_six(self):
        p = Presentation("c6", ("a",), (Word((1,) * 6),))
        assert abelianization(p) == AbelianGroup(0, (6,))

    def test_invariant_under_relator_permutation(self):
        gamma = load_fixture("tetrahedral")
        shuffled = Presentation(gamma.name, gamma.generators,
                                tuple(reversed(gamma.relators)))
        assert abelianization(shuffled) == abelianization(gamma)

    def test_invariant_under_consequence_relator(self):
        p6 = load_fixture("p6")
        extra = p6.relators[0].conjugate(Word((2, 1))) * p6.relators[1]
        assert abelianization(quotient(p6, [extra])) == abelianization(p6)

    def test_quotient_identity(self):
        p6 = load_fixture("p6")
        assert quotient(p6, []) is p6


class TestSignHoms:
    def test_p6_has_exactly_one(self):
        # oracle: b^3 forces b -> +1, leaving only a -> -1
        p6 = load_fixture("p6")
        homs = sign_homs(p6)
        assert len(homs) == 1
        assert homs[0].signs == (-1, 1)

    def test_tetrahedral_has_three(self):
        assert len(sign_homs(load_fixture("tetrahedral"))) == 3

    def test_odd_torsion_kills_sign_maps(self):
        p = Presentation("c3", ("a",), (Word((1, 1, 1)),))
        assert sign_homs(p) == []

    def test_count_matches_mod2_homology(self):
        for fixture in ("p6", "p4", "tetrahedral", "figure8"):
            p = load_fixture(fixture)
            ab = abelianization(p)
            exponent = ab.free_rank + sum(1 for d in ab.torsion if d % 2 == 0)
            assert len(sign_homs(p)) + 1 == 2 ** exponent

    def test_kernel_words_have_positive_sign(self):
        p6 = load_fixture("p6")
        hom = sign_homs(p6)[0]
        for w in hom.kernel_words():
            assert hom.evaluate(w) == 1

    def test_lexicographic_order(self):
        p = Presentation("free2", ("a", "b"), ())
        assert [h.signs for h in sign_homs(p)] == [(-1, -1), (-1, 1), (1, -1)]
