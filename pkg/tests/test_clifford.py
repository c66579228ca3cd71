import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cliffco.clifford import (
    CliffordElement,
    LinearOperator,
    algebra_new,
    center,
    en_algebra,
    even_odd_split,
    grade_involution,
    mul,
    pseudoscalar,
    regular_trace,
    try_invert,
)
from cliffco.errors import AlgebraMismatch, BadIndex, CharTwo, NotInvertible
from cliffco.quadratic import delta
from cliffco.scalars import QQ, FieldElement, prime_field

from oracles import WordAlgebra, index_of_word, word_of_index

small = st.integers(-2, 2)


@st.composite
def algebras(draw, max_n=3, field=QQ):
    n = draw(st.integers(0, max_n))
    alpha = draw(small)
    beta = [draw(small) for _ in range(n)]
    gamma = [draw(small) for _ in range(n)]
    lam = {(i, j): draw(small) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return algebra_new(field, n, alpha, beta, gamma, lam), (n, alpha, beta, gamma, lam)


def elements(A, coeffs=st.integers(-3, 3)):
    return st.lists(coeffs, min_size=A.dim, max_size=A.dim).map(
        lambda v: CliffordElement(A, tuple(A.field.coerce(x) for x in v)))


def test_algebra_new_examples():
    E1 = algebra_new(QQ, 1, 1, [0], [0])
    assert E1 == en_algebra(QQ, 1)
    assert E1.dim == 4
    A = algebra_new(QQ, 0, 5)
    assert A.dim == 2 and A.G * A.G == A.scalar(5)
    with pytest.raises(CharTwo):
        algebra_new(prime_field(2), 0, 1)


def test_lambda_index_checked():
    with pytest.raises(BadIndex):
        algebra_new(QQ, 2, 1, [1, 1], [0, 0], {(2, 1): 1})
    with pytest.raises(BadIndex):
        algebra_new(QQ, 2, 1, [1, 1], [0, 0], {(1, 1): 1})


def test_mul_examples():
    a, b, g = Fraction(3), Fraction(-2), Fraction(5)
    A = algebra_new(QQ, 1, a, [b], [g])
    G, X = A.G, A.X(1)
    assert G * X == A.monomial(1, [1])
    assert X * G == A.scalar(g) - A.monomial(1, [1])
    x = A.element(A.scalar(7).vec)
    assert A.one() * x == x
    Q = algebra_new(QQ, 1, 1, [1], [0])
    GX = Q.G * Q.X(1)
    assert GX * GX == Q.scalar(-1)


def test_mul_mismatch():
    A = algebra_new(QQ, 1, 1, [1], [0])
    B = algebra_new(QQ, 1, 1, [2], [0])
    with pytest.raises(AlgebraMismatch):
        mul(A.G, B.G)


@given(algebras(max_n=2))
def test_table_matches_word_rewriting(data):
    A, (n, alpha, beta, gamma, lam) = data
    W = WordAlgebra(n, alpha, beta, gamma, lam)
    for a, b in itertools.product(range(A.dim), repeat=2):
        expected = W.normal(word_of_index(a, n) + word_of_index(b, n))
        got = A.basis(a) * A.basis(b)
        vec = [Fraction(0)] * A.dim
        for w, c in expected.items():
            vec[index_of_word(w, n)] = c
        assert got.vec == tuple(vec)


@given(algebras(max_n=3, field=prime_field(5)))
def test_table_matches_word_rewriting_mod_p(data):
    A, (n, alpha, beta, gamma, lam) = data
    W = WordAlgebra(n, alpha, beta, gamma, lam, mod=5)
    for a in range(A.dim):
        for b in (0, A.dim - 1, (a * 7) % A.dim):
            expected = W.normal(word_of_index(a, n) + word_of_index(b, n))
            vec = [0] * A.dim
            for w, c in expected.items():
                vec[index_of_word(w, n)] = c
            assert (A.basis(a) * A.basis(b)).vec == tuple(vec)


@given(algebras(max_n=3), st.data())
def test_associativity(data, d):
    A, _ = data
    idx = st.integers(0, A.dim - 1)
    a, b, c = (A.basis(d.draw(idx)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(algebras(max_n=2))
def test_associativity_all_triples(data):
    A, _ = data
    B = A.basis_elements()
    for a, b, c in itertools.product(B, repeat=3):
        assert (a * b) * c == a * (b * c)


@given(algebras(max_n=3))
def test_anticommutation_closure(data):
    A, (n, alpha, beta, gamma, lam) = data
    G = A.G
    assert G * G == A.scalar(alpha)
    for i in range(1, n + 1):
        X = A.X(i)
        assert X * X == A.scalar(beta[i - 1])
        assert G * X + X * G == A.scalar(gamma[i - 1])
        for j in range(i + 1, n + 1):
            Y = A.X(j)
            assert X * Y + Y * X == A.scalar(lam[(i, j)])


@given(algebras(max_n=3, field=prime_field(7)))
def test_orthogonal_fast_path_agrees(data):
    A, (n, alpha, beta, _, _) = data
    O = algebra_new(A.field, n, alpha, beta)
    assert O.is_orthogonal
    assert O._table_orthogonal() == O._table_general()


def test_grade_involution_examples():
    A = algebra_new(QQ, 1, 2, [3], [1])
    assert grade_involution(A.one()) == A.one()
    assert grade_involution(A.G) == -A.G
    GX = A.monomial(1, [1])
    assert grade_involution(GX) == GX
    x = A.scalar(3) + A.X(1).scale(2)
    assert grade_involution(x) == A.scalar(3) - A.X(1).scale(2)


@given(algebras(max_n=3))
def test_sigma_is_an_involutive_automorphism(data):
    A, _ = data
    B = A.basis_elements()
    for a, b in itertools.product(B, repeat=2):
        assert grade_involution(a * b) == grade_involution(a) * grade_involution(b)
    for a in B:
        assert grade_involution(grade_involution(a)) == a


def test_even_odd_split_examples():
    A = algebra_new(QQ, 1, 1, [1], [0])
    assert even_odd_split(A.one()) == (A.one(), A.zero())
    x = A.G + A.X(1) + A.monomial(1, [1])
    assert even_odd_split(x) == (A.monomial(1, [1]), A.G + A.X(1))
    assert even_odd_split(A.zero()) == (A.zero(), A.zero())


@given(algebras(max_n=2), st.data())
def test_even_odd_split_property(data, d):
    A, _ = data
    x = d.draw(elements(A))
    even, odd = even_odd_split(x)
    assert even + odd == x
    assert grade_involution(even) == even
    assert grade_involution(odd) == -odd


def test_try_invert_examples():
    A = algebra_new(QQ, 1, 3, [1], [0])
    assert try_invert(A.one()) == A.one()
    assert try_invert(A.G) == A.G.scale(Fraction(1, 3))
    E = en_algebra(QQ, 1)
    with pytest.raises(NotInvertible):
        try_invert(E.X(1))


@given(algebras(max_n=2), st.data())
def test_try_invert_property(data, d):
    A, _ = data
    x = d.draw(elements(A))
    try:
        y = try_invert(x)
    except NotInvertible:
        return
    assert y * x == A.one() and x * y == A.one()


@given(algebras(max_n=2))
def test_nilpotent_elements_are_not_invertible(data):
    A, (n, alpha, beta, gamma, lam) = data
    for i in range(1, n + 1):
        if beta[i - 1] == 0:
            with pytest.raises(NotInvertible):
                try_invert(A.X(i))


def test_center_examples():
    A = algebra_new(QQ, 1, 1, [1], [0])
    assert center(A) == [A.one()]
    B = algebra_new(QQ, 2, 1, [1, 1])
    assert center(B) == [B.one(), B.monomial(1, [1, 2])]
    C = algebra_new(QQ, 0, 7)
    assert len(center(C)) == 2


@given(algebras(max_n=2))
def test_center_elements_commute(data):
    A, _ = data
    for z in center(A):
        for b in A.generators():
            assert z * b == b * z


def test_regular_trace_examples():
    for n in range(4):
        A = algebra_new(QQ, n, 2, [3] * n)
        assert regular_trace(A.one()) == QQ.element(2 ** (n + 1))
        assert regular_trace(A.G) == QQ.element(0)
        assert regular_trace(A.scalar(3) + A.G) == QQ.element(3 * 2 ** (n + 1))


@given(algebras(max_n=2), st.data())
def test_trace_is_symmetric(data, d):
    A, _ = data
    a, b = d.draw(elements(A)), d.draw(elements(A))
    assert regular_trace(a * b) == regular_trace(b * a)


@given(st.integers(0, 3), st.lists(st.integers(1, 4), min_size=4, max_size=4))
def test_trace_vanishes_off_identity_orthogonal(n, params):
    A = algebra_new(QQ, n, params[0], params[1:n + 1])
    for i, b in enumerate(A.basis_elements()):
        if i:
            assert regular_trace(b) == QQ.element(0)


def test_pseudoscalar_examples():
    A = algebra_new(QQ, 3, 2, [1, -1, 5])
    z = pseudoscalar(A)
    assert z == A.monomial(1, [1, 2, 3])
    B = algebra_new(QQ, 2, 1, [1, 1])
    z = pseudoscalar(B)
    assert z == B.monomial(1, [1, 2])
    assert z * z == B.scalar(-1)
    al, be, ga = Fraction(2), Fraction(3), Fraction(1)
    C = algebra_new(QQ, 1, al, [be], [ga])
    z = pseudoscalar(C)
    assert z * z == C.scalar(ga * ga / 4 - al * be)


@given(algebras(max_n=3))
def test_pseudoscalar_squares_to_delta(data):
    A, _ = data
    z = pseudoscalar(A)
    assert z * z == A.scalar(delta(A))
    if A.n % 2 == 0:
        for g in A.generators():
            assert z * g == g * z


def test_element_json_round_trip():
    A = algebra_new(QQ, 3, 1, [1, 1, 1])
    x = A.monomial(1, [1, 3]).scale(Fraction(2, 3)) + A.scalar(1)
    assert x.to_json() == {"1": "1", "g x{1,3}": "2/3"}
    assert A.from_json(x.to_json()) == x
    with pytest.raises(BadIndex):
        A.from_json({"x{4}": "1"})


def test_linear_operator_basics():
    A = algebra_new(QQ, 1, 1, [1], [0])
    sig = LinearOperator.from_function(A, grade_involution)
    assert sig @ sig == LinearOperator.identity(A)
    assert (sig - sig).is_zero()
    assert sig(A.G) == -A.G
