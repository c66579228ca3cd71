import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cliffco.clifford import LinearOperator, algebra_new, en_algebra, grade_involution
from cliffco.comodule import (
    Action,
    Coaction,
    CoactionTuple,
    action_from_coaction,
    action_from_tuple,
    canonical_coaction,
    coaction_from_action,
    coaction_from_tuple,
    coinvariants,
    coinvariants_kernels,
    coinvariants_nullspace,
    counit_action,
    same_subspace,
    trivial_coaction,
    tuple_from_action,
    verify_comodule_algebra,
    verify_module_algebra,
    verify_tuple,
)
from cliffco.en_hopf import en
from cliffco.errors import InvalidAction, InvalidCoaction, InvalidTuple
from cliffco.quadratic import orthogonalize_algebra
from cliffco.scalars import QQ, prime_field
from cliffco.tensor import TensorElement

from test_clifford import algebras


def test_canonical_coaction_examples():
    A = algebra_new(QQ, 1, 1, [1], [0])
    rho = canonical_coaction(A)
    H = rho.en.algebra
    P = TensorElement.pure
    assert rho(A.G) == P(A.G, H.G)
    assert rho(A.X(1)) == P(A.X(1), H.G) + P(A.one(), H.X(1))
    # rho(GX) = rho(G) rho(X) = GX (x) 1 + G (x) g x
    assert rho(A.monomial(1, [1])) == P(A.monomial(1, [1]), H.one()) + P(A.G, H.monomial(1, [1]))
    assert verify_comodule_algebra(rho).ok


def test_trivial_coaction_and_counit_action():
    A = algebra_new(QQ, 2, 1, [2, 3], [1, 0], {(1, 2): 1})
    E = en(QQ, 2)
    rho = trivial_coaction(A, E)
    assert verify_comodule_algebra(rho).ok
    mu = action_from_coaction(rho)
    assert mu == counit_action(A, E)
    assert verify_module_algebra(mu).ok
    t = tuple_from_action(mu)
    assert t.phi == LinearOperator.identity(A)
    assert all(d.is_zero() for d in t.ds)
    assert len(coinvariants(rho)) == A.dim


@given(algebras(max_n=2))
def test_canonical_coaction_is_comodule_algebra(data):
    A, _ = data
    rep = verify_comodule_algebra(canonical_coaction(A))
    assert rep.ok, rep.to_json()


@given(algebras(max_n=2, field=prime_field(5)))
def test_canonical_coaction_mod_p(data):
    A, _ = data
    assert verify_comodule_algebra(canonical_coaction(A)).ok


def _drop_term(rho, a, key):
    imgs = list(rho.images)
    coeffs = dict(imgs[a].coeffs)
    del coeffs[key]
    imgs[a] = TensorElement(imgs[a].spaces, coeffs)
    return Coaction.from_images(rho.algebra, rho.en, imgs)


def test_fault_injection_coaction():
    A = algebra_new(QQ, 1, 1, [1], [0])
    rho = canonical_coaction(A)
    x1 = A.index(0, 1)
    bad = _drop_term(rho, x1, (0, rho.en.index(0, 1)))  # drop 1 (x) x_1
    rep = verify_comodule_algebra(bad)
    assert not rep.ok and rep.axiom == "multiplicativity"
    # a coaction that forgets the unit
    imgs = list(rho.images)
    imgs[0] = imgs[0].scale(2)
    rep = verify_comodule_algebra(Coaction.from_images(A, rho.en, imgs))
    assert not rep.ok and rep.axiom == "unit"
    # G (x) 1 + ... breaks the counit
    imgs = list(rho.images)
    imgs[A.index(1, 0)] = imgs[A.index(1, 0)] + TensorElement.pure(A.one(), rho.en.algebra.one())
    rep = verify_comodule_algebra(Coaction.from_images(A, rho.en, imgs))
    assert not rep.ok and rep.axiom == "counit"
    with pytest.raises(InvalidCoaction):
        action_from_coaction(bad)


def test_fault_injection_tuple():
    A = algebra_new(QQ, 1, 1, [1], [0])
    sig = LinearOperator.from_function(A, grade_involution)
    ident = LinearOperator.identity(A)
    rep = verify_tuple(CoactionTuple(sig, (ident,)))
    assert not rep.ok and rep.axiom == "d1 phi-derivation"
    with pytest.raises(InvalidTuple):
        action_from_tuple(CoactionTuple(sig, (ident,)))
    scaled = LinearOperator.from_function(A, lambda x: x.scale(2))
    rep = verify_tuple(CoactionTuple(scaled, ()))
    assert not rep.ok and rep.axiom == "phi unital"


def test_v_and_phi_on_canonical():
    A = algebra_new(QQ, 1, 1, [1], [0])
    rho = canonical_coaction(A)
    mu = action_from_coaction(rho)
    H = rho.en.algebra
    assert mu(H.G, A.G) == -A.G
    assert mu(H.G, A.X(1)) == -A.X(1)
    assert mu(H.X(1), A.X(1)) == A.scalar(-1)
    assert mu(H.X(1), A.G) == A.zero()
    t = tuple_from_action(mu)
    assert t.phi == LinearOperator.from_function(A, grade_involution)
    assert t.ds[0](A.X(1)) == A.scalar(-1)
    assert t.ds[0](A.G) == A.zero()
    assert t.ds[0](A.monomial(1, [1])) == A.G


@given(algebras(max_n=2))
@settings(max_examples=25)
def test_canonical_tuple_is_sigma_and_minus_contraction(data):
    A, (n, alpha, beta, gamma, lam) = data
    t = tuple_from_action(action_from_coaction(canonical_coaction(A)))
    assert t.phi == LinearOperator.from_function(A, grade_involution)
    for i in range(1, n + 1):
        assert t.ds[i - 1](A.X(i)) == A.scalar(-1)
        assert t.ds[i - 1](A.G).is_zero()
        for j in range(1, n + 1):
            if j != i:
                assert t.ds[i - 1](A.X(j)).is_zero()


@given(algebras(max_n=2))
@settings(max_examples=20)
def test_round_trips(data):
    A, _ = data
    rho = canonical_coaction(A)
    mu = action_from_coaction(rho)
    assert verify_module_algebra(mu).ok
    assert coaction_from_action(mu) == rho
    t = tuple_from_action(mu)
    assert verify_tuple(t).ok
    assert action_from_tuple(t) == mu
    assert tuple_from_action(action_from_tuple(t)) == t
    assert coaction_from_tuple(t) == rho


def test_round_trip_on_non_canonical_tuple():
    # phi = conjugation by the unit G X, d = 0 gives a comodule algebra over E(1)
    A = algebra_new(QQ, 1, 1, [1], [0])
    c = A.monomial(1, [1])
    cinv = c * A.scalar(-1)
    phi = LinearOperator.from_function(A, lambda a: cinv * a * c)
    t = CoactionTuple(phi, (LinearOperator.zero(A),))
    assert verify_tuple(t).ok
    rho = coaction_from_tuple(t)
    assert verify_comodule_algebra(rho).ok
    assert coaction_from_action(action_from_tuple(t)) == rho
    assert tuple_from_action(action_from_coaction(rho)) == t
    cis = coinvariants(rho)
    assert same_subspace(cis, [A.one(), c], A.dim, QQ)


def test_coinvariants_examples():
    A = algebra_new(QQ, 1, 1, [1], [0])
    assert coinvariants(canonical_coaction(A)) == [A.one()]
    E = en_algebra(QQ, 2)
    assert len(coinvariants(canonical_coaction(E))) == 1
    Z = algebra_new(QQ, 1, 0, [0], [0])
    cis = coinvariants(canonical_coaction(Z))
    assert len(cis) == 1 and cis[0] == Z.one()


@given(algebras(max_n=2))
@settings(max_examples=25)
def test_coinvariants_agree_and_form_subalgebra(data):
    A, _ = data
    rho = canonical_coaction(A)
    direct = coinvariants_nullspace(rho)
    t = tuple_from_action(action_from_coaction(rho))
    assert same_subspace(direct, coinvariants_kernels(t), A.dim, A.field)
    H = rho.en.algebra
    for a in direct:
        assert rho(a) == TensorElement.pure(a, H.one())
    for a, b in itertools.product(direct, repeat=2):
        ab = a * b
        assert rho(ab) == TensorElement.pure(ab, H.one())


@given(algebras(max_n=2))
@settings(max_examples=20)
def test_colinearity_transfers_along_isomorphism(data):
    """Transporting the canonical coaction along the orthogonalising isomorphism gives a comodule algebra."""
    A, _ = data
    B, images = orthogonalize_algebra(A)
    # f : B -> A sending the generators of B to the images
    f_cols = []
    for idx in range(B.dim):
        x = A.one()
        for g in B.word(idx):
            x = x * images[g]
        f_cols.append(x)
    f = LinearOperator(A, tuple(tuple(r) for r in zip(*[c.vec for c in f_cols])))
    rhoB = canonical_coaction(B)
    from cliffco import linalg
    finv = linalg.inverse(A.field, [list(r) for r in f.matrix])
    assert finv is not None
    imgs = []
    H = rhoB.en.algebra
    for a in A.basis_elements():
        pre = B.element(linalg.matvec(A.field, finv, a.vec))
        t = rhoB(pre)
        out = TensorElement.zero((A, H))
        for (bi, hi), c in t.coeffs.items():
            out = out + TensorElement.pure(f_cols[bi], H.basis(hi)).scale(c)
        imgs.append(out)
    rhoA = Coaction.from_images(A, rhoB.en, imgs)
    assert verify_comodule_algebra(rhoA).ok
    assert len(coinvariants(rhoA)) == len(coinvariants(rhoB))


def test_json_round_trips():
    A = algebra_new(QQ, 1, 1, [1], [0])
    rho = canonical_coaction(A)
    obj = rho.to_json()
    assert obj["rho"]["x{1}"] == {"x{1}|g": "1", "1|x{1}": "1"}
    assert Coaction.from_json(A, rho.en, obj) == rho
    t = tuple_from_action(action_from_coaction(rho))
    assert CoactionTuple.from_json(A, t.to_json()) == t
    with pytest.raises(InvalidCoaction):
        Coaction.from_json(A, rho.en, {"rho": {}, "extra": 1})
    with pytest.raises(InvalidTuple):
        CoactionTuple.from_json(A, {"phi": {}})


def test_module_fault_injection():
    A = algebra_new(QQ, 1, 1, [1], [0])
    mu = action_from_coaction(canonical_coaction(A))
    ops = [mu.operator(e) for e in range(mu.en.dim)]
    ops[mu.en.index(0, 1)] = ops[mu.en.index(0, 1)] + LinearOperator.identity(A)
    bad = Action.from_operators(A, mu.en, ops)
    assert not verify_module_algebra(bad).ok
    with pytest.raises(InvalidAction):
        coaction_from_action(bad)
