import random
from fractions import Fraction

import pytest

from gradedpi.algebras import (
    GradedAlgebra,
    build_catalog,
    coarsen_by_quotient,
    detect_regular,
    tensor,
)
from gradedpi.errors import PreconditionError, ResourceRefusal
from gradedpi.freealg import (
    FreePoly,
    commutator_poly,
    hall_poly,
    monomial_poly,
    parse_poly,
    project_poly,
    standard_poly,
    transfer_phi,
)
from gradedpi.groups import FiniteAbelianGroup, quotient_by
from gradedpi.pitool import (
    GeneratorSet,
    bp_basis,
    check_pauli_multidegree,
    dv_basis,
    family_pauli,
    family_regular,
    is_central,
    is_identity,
    lift_basis,
    multilinear_central_space,
    multilinear_identity_space,
    pauli_reduce,
    replay_certificate,
    tideal_consequences,
    transfer_basis,
    tspace_consequences,
    verify_basis,
)
from gradedpi.scalars import Cyclo


def trivial_field_algebra():
    """R with the trivial grading, the 1-dimensional building block."""
    return GradedAlgebra(FiniteAbelianGroup(()), 1, ["1"], [()],
                         {(0, 0): {0: Cyclo.one()}}, {0: Cyclo.one()},
                         name="r-triv")


# -- membership ----------------------------------------------------------------


def test_s4_is_identity_of_m2r():
    m2 = build_catalog("m2r-triv")
    ok, _ = is_identity(m2, standard_poly(4))
    assert ok
    ok, w = is_identity(m2, standard_poly(3))
    assert not ok and w is not None


def test_hall_is_identity_of_quaternions():
    h = build_catalog("h-triv")
    ok, _ = is_identity(h, hall_poly())
    assert ok


def test_mixed_commutator_not_identity_m2_4():
    alg = build_catalog("m2-4")
    g = alg.group
    f = commutator_poly(g, degrees=[(1, 0), (0, 1)])
    ok, witness = is_identity(alg, f)
    assert not ok
    labels = set(witness.values())
    assert labels == {"A", "B"}


def test_is_central_classification_m2_4():
    alg = build_catalog("m2-4")
    g = alg.group
    x_e = monomial_poly(g, 1, [(1, (0, 0))])
    assert is_central(alg, x_e)[0] == "proper-central"
    x_a = monomial_poly(g, 1, [(1, (1, 0))])
    verdict, witness = is_central(alg, x_a)
    assert verdict == "neither"
    assert witness[1] == "B"
    comm_ab = commutator_poly(g, degrees=[(1, 0), (0, 1)])
    skew = parse_poly("x1:a*x2:b + x2:b*x1:a", g, 2)
    assert is_central(alg, skew)[0] == "identity"


def test_okhitin_poly_proper_central_m2r():
    from gradedpi.freealg import okhitin_central_poly

    m2 = build_catalog("m2r-triv")
    assert is_central(m2, okhitin_central_poly())[0] == "proper-central"


# -- multilinear spaces ----------------------------------------------------------


def test_identity_space_elementary_ee():
    elem = build_catalog("m2-elem")
    sp = multilinear_identity_space(elem, [(0,), (0,)])
    assert sp.dim == 1
    (poly,) = sp.basis_polys()
    scaled = {m: c for m, c in poly.terms.items()}
    assert len(scaled) == 2


def test_identity_space_elementary_aaa_contains_reversal():
    elem = build_catalog("m2-elem")
    sp = multilinear_identity_space(elem, [(1,), (1,), (1,)])
    f = parse_poly("x1:a*x2:a*x3:a - x3:a*x2:a*x1:a", elem.group, 2)
    assert sp.contains(sp.pg.to_vector(f))


def test_single_variable_space_trivial_on_support():
    alg = build_catalog("m2-4")
    for g in alg.support:
        sp = multilinear_identity_space(alg, [g])
        assert sp.dim == 0


def test_central_space_m2_4_aa_full():
    alg = build_catalog("m2-4")
    sp = multilinear_central_space(alg, [(1, 0), (1, 0)])
    assert sp.dim == 2


def test_central_space_pauli_offsupport_degree_equals_identity_space():
    p3 = build_catalog("pauli", n=3)
    degs = [(1, 0), (0, 1)]  # product (1,1) != e
    zc = multilinear_central_space(p3, degs)
    zi = multilinear_identity_space(p3, degs)
    assert zc.dim == zi.dim


def test_empty_multidegree_rejected():
    alg = build_catalog("m2-4")
    with pytest.raises(PreconditionError):
        multilinear_identity_space(alg, [])


def test_resource_refusal():
    alg = build_catalog("m2-elem")
    with pytest.raises(ResourceRefusal):
        multilinear_identity_space(alg, [(0,)] * 9)


# -- consequence spans --------------------------------------------------------------


def test_tideal_commutator_at_ee():
    g = FiniteAbelianGroup(())
    comm = commutator_poly(g)
    sub = tideal_consequences([comm], [(), ()], group=g)
    assert sub.dim == 1


def test_tspace_single_variable_full():
    g = FiniteAbelianGroup((2,))
    x = monomial_poly(g, 2, [(1, (0,))])
    sub = tspace_consequences([x], [(1,), (1,)], group=g)
    assert sub.dim == 2  # both orderings of the two odd letters


def test_tspace_padded_commutator_contains_its_shape():
    elem = build_catalog("m2-elem")
    bp = bp_basis(elem.group)
    sub = tspace_consequences(bp, [(1,), (0,), (0,), (1,)])
    target = parse_poly("x1:a*x2:e*x3:e*x4:a - x1:a*x3:e*x2:e*x4:a", elem.group, 2)
    assert sub.contains(sub.pg.to_vector(target))


def test_conservativity_regular():
    alg = build_catalog("m2-4")
    beta, _ = detect_regular(alg)
    fam = family_regular(beta, "identities")
    for degrees in [[(1, 0), (0, 1)], [(1, 0), (1, 0), (0, 1)]]:
        cons = tideal_consequences(fam, degrees)
        idsp = multilinear_identity_space(alg, degrees)
        for v in cons.basis():
            assert idsp.contains(v)


# -- families -----------------------------------------------------------------------


def test_family_regular_m2_4_counts():
    beta, _ = detect_regular(build_catalog("m2-4"))
    fam = family_regular(beta, "identities")
    assert len(fam.members) == 16
    cent = family_regular(beta, "centrals")
    assert len(cent.s2) == 1  # radical is trivial: only the identity degree
    assert len(cent.s1) == 256


def test_family_regular_gamma_centrals_include_radical_variable():
    alg = build_catalog("c2@m2-4")
    beta, _ = detect_regular(alg)
    cent = family_regular(beta, "centrals")
    words = {str(f) for f in cent.s2}
    assert "x1:a0" in words and "x1:e" in words


def test_family_regular_trivial_group():
    triv = trivial_field_algebra()
    beta, _ = detect_regular(triv)
    fam = family_regular(beta, "identities")
    assert len(fam.members) == 1
    cent = family_regular(beta, "centrals")
    assert [str(f) for f in cent.s2] == ["x1:e"]
    assert len(cent.s1) == 1


def test_family_pauli_p3_shapes():
    p3 = build_catalog("pauli", n=3)
    fam = family_pauli(p3, 3)
    # no swap or degree-seven members in the basis when i never occurs
    assert all(len(f.letters()) <= 3 for f in fam.s1)
    assert fam.extras  # the swap identities are tracked as extras
    # the trinomial at a nonreal pair has p = q = 1 (cube-root quadratic)
    trinomials = [f for f in fam.s1 if len(f.terms) == 3 and len(f.letters()) == 3]
    coeffs = {c for f in trinomials for c in f.terms.values()}
    assert coeffs == {Cyclo.one()}


def test_family_pauli_p4_has_degree7():
    p4 = build_catalog("pauli", n=4)
    fam = family_pauli(p4, 2)
    assert any(len(f.letters()) == 7 for f in fam.s1)
    assert not fam.extras  # swap identities are basis members here


def test_family_pauli_rejects_regular():
    p2 = build_catalog("pauli", n=2)
    with pytest.raises(PreconditionError):
        family_pauli(p2, 3)


def test_family_pauli_extras_are_consequences():
    p3 = build_catalog("pauli", n=3)
    fam = family_pauli(p3, 3)
    for f in fam.extras[:5]:
        ok, _ = is_identity(p3, f)
        assert ok
        degrees = [d for _, d in f.letters()]
        cons = tideal_consequences(fam, degrees)
        assert cons.contains(cons.pg.to_vector(f))


# -- transfer ---------------------------------------------------------------------


def test_transfer_field_recovers_regular_central_family():
    """Transporting the field's central basis along a regular factor gives the
    radical variables and the padded commutation binomials."""
    field = trivial_field_algebra()
    r = build_catalog("m2-4")
    group = field.group
    x = lambda i: monomial_poly(group, 1, [(i, ())])
    s1 = [x(1) * (x(2) * x(3) - x(3) * x(2)) * x(4)]
    s2 = [x(1)]
    genset = GeneratorSet("field-centrals", "centrals", group, 1, s1=s1, s2=s2)
    out = transfer_basis(genset, r)
    beta, _ = detect_regular(r)
    expected = family_regular(beta, "centrals")
    # the trivial factor has rank zero, so product degrees are the H-degrees
    got_s2 = {str(f) for f in out.s2}
    want_s2 = {str(f) for f in expected.s2}
    assert got_s2 == want_s2
    got_s1 = {str(f) for f in out.s1}
    want_s1 = {str(f) for f in expected.s1}
    assert got_s1 == want_s1


def test_transfer_refuses_nonminimal_center():
    """A coarsened regular grading whose center exceeds the radical components
    is refused in central mode rather than guessed."""
    field = trivial_field_algebra()
    group = field.group
    x = lambda i: monomial_poly(group, 1, [(i, ())])
    genset = GeneratorSet("field-centrals", "centrals", group, 1,
                          s1=[x(1) * (x(2) * x(3) - x(3) * x(2)) * x(4)], s2=[x(1)])
    h2 = build_catalog("h2")
    with pytest.raises(PreconditionError):
        transfer_basis(genset, h2)


def test_transfer_soundness_random():
    random.seed(3)
    a = build_catalog("m2-elem")
    r = build_catalog("m2-4")
    beta, _ = detect_regular(r)
    big = tensor(a, r)
    helems = beta.group.elements()
    for _ in range(20):
        n = random.randint(1, 3)
        degrees = [random.choice(a.group.elements()) for _ in range(n)]
        terms = {}
        for _ in range(random.randint(1, 3)):
            perm = list(range(n))
            random.shuffle(perm)
            mono = tuple((k + 1, degrees[k]) for k in perm)
            terms[mono] = Fraction(random.randint(-2, 2))
        f = FreePoly(a.group, 2, terms)
        if f.is_zero():
            continue
        h = [random.choice(helems) for _ in range(len(f.letters()))]
        phi = transfer_phi(f, h, beta)
        assert is_identity(a, f)[0] == is_identity(big, phi)[0]


# -- quotient lifting ----------------------------------------------------------------


def test_lift_basis_preconditions():
    elem = build_catalog("m2-elem")
    # no invertible central element of the off-diagonal degree
    with pytest.raises(PreconditionError):
        lift_basis(elem, (1,), dv_basis(FiniteAbelianGroup((2,))))


def test_lift_through_trivial_quotient_is_relabel():
    es = build_catalog("e-series", eps=1, n=2)
    q, _ = quotient_by(es.group, (0,))
    base = dv_basis(q)
    lifted = lift_basis(es, (0,), base)
    assert len(lifted.members) == len(base.members)
    rep = verify_basis(es, lifted, 3)
    assert rep.ok


def test_quotient_soundness_m2c_z4():
    alg = build_catalog("m2c-z4")
    co = coarsen_by_quotient(alg, (2,))
    q, proj = quotient_by(alg.group, (2,))
    random.seed(11)
    for _ in range(15):
        n = random.randint(1, 3)
        degrees = [random.choice(alg.group.elements()) for _ in range(n)]
        terms = {}
        for _ in range(random.randint(1, 3)):
            perm = list(range(n))
            random.shuffle(perm)
            terms[tuple((k + 1, degrees[k]) for k in perm)] = Fraction(
                random.randint(-2, 2))
        f = FreePoly(alg.group, alg.order, terms)
        if f.is_zero():
            continue
        qf = project_poly(f, q, proj)
        assert is_identity(alg, f)[0] == is_identity(co, qf)[0]


def test_lifted_corollary_shapes_m2c_z4():
    alg = build_catalog("m2c-z4")
    co = coarsen_by_quotient(alg, (2,))
    lifted = lift_basis(alg, (2,), dv_basis(co.group))
    twos = [f for f in lifted.members if len(f.letters()) == 2]
    threes = [f for f in lifted.members if len(f.letters()) == 3]
    assert len(twos) == 4 and len(threes) == 8
    even = {(0,), (2,)}
    odd = {(1,), (3,)}
    for f in twos:
        assert {d for _, d in f.letters()} <= even
    for f in threes:
        assert {d for _, d in f.letters()} <= odd


# -- verification ------------------------------------------------------------------


def test_verify_dv_on_elementary():
    elem = build_catalog("m2-elem")
    rep = verify_basis(elem, dv_basis(elem.group), 4)
    assert rep.ok
    assert all(r.equal for r in rep.records)
    # report serialization round-trips through JSON
    import json

    doc = json.loads(rep.to_json())
    assert doc["ok"] and doc["records"]
    assert "dim_target" in rep.to_tsv().splitlines()[0]


def test_verify_detects_incomplete_basis():
    elem = build_catalog("m2-elem")
    group = elem.group
    partial = GeneratorSet("partial", "identities", group, 2,
                           s1=[commutator_poly(group, degrees=[(0,), (0,)])])
    rep = verify_basis(elem, partial, 3)
    assert not rep.ok
    bad = [r for r in rep.records if not r.equal]
    assert bad and any("missing" in (r.witness or "") for r in bad)


def test_verify_flags_non_identity_member():
    alg = build_catalog("m2-4")
    group = alg.group
    wrong = GeneratorSet("wrong", "identities", group, 2,
                         s1=[commutator_poly(group, degrees=[(1, 0), (0, 1)])])
    rep = verify_basis(alg, wrong, 2)
    assert not rep.ok
    assert any(not m["ok"] for m in rep.membership)


def test_verify_parallel_matches_sequential():
    elem = build_catalog("m2-elem")
    rep1 = verify_basis(elem, dv_basis(elem.group), 3)
    rep2 = verify_basis(elem, dv_basis(elem.group), 3, jobs=2)
    assert [r.as_dict() for r in rep1.records] == [r.as_dict() for r in rep2.records]


# -- the reducer --------------------------------------------------------------------


def test_reduce_distinct_degrees_unchanged():
    p3 = build_catalog("pauli", n=3)
    f = parse_poly("x1:x*x2:y - x2:y*x1:x", p3.group, 12)
    red, cert = pauli_reduce(p3, f)
    assert red == FreePoly(p3.group, red.order, f.terms)
    assert cert == []


def test_reduce_pair_merge_p3():
    p3 = build_catalog("pauli", n=3)
    f = parse_poly("x1:x*x2:x", p3.group, 12)
    red, cert = pauli_reduce(p3, f)
    assert len(cert) == 1
    letters = red.letters()
    assert len(letters) == 1
    assert letters[0][1] == (2, 0)
    replay_certificate(FreePoly(p3.group, red.order, f.terms), red, cert)


def test_reduce_is_identity_invariant_random():
    random.seed(5)
    for n_alg, trials in ((3, 25), (4, 25)):
        alg = build_catalog("pauli", n=n_alg)
        elems = alg.group.elements()
        for _ in range(trials):
            n = random.randint(2, 5)
            degrees = [random.choice(elems) for _ in range(n)]
            terms = {}
            for _ in range(random.randint(1, 4)):
                perm = list(range(n))
                random.shuffle(perm)
                terms[tuple((k + 1, degrees[k]) for k in perm)] = Fraction(
                    random.randint(-3, 3))
            f = FreePoly(alg.group, alg.order, terms)
            if f.is_zero():
                continue
            red, cert = pauli_reduce(alg, f)
            replay_certificate(FreePoly(alg.group, red.order, f.terms), red, cert)
            lhs = is_identity(alg, f)[0]
            rhs = True if red.is_zero() else is_identity(alg, red)[0]
            assert lhs == rhs


def test_reduce_needs_multilinear():
    p3 = build_catalog("pauli", n=3)
    f = parse_poly("x1:x*x1:x", p3.group, 12)
    with pytest.raises(PreconditionError):
        pauli_reduce(p3, f)


# -- the degree-seven check ------------------------------------------------------------


def test_check_pauli_multidegree_small():
    """The quotient-counting path agrees with the dense engine on the
    degree-three swap multidegree of Pauli(4)."""
    p4 = build_catalog("pauli", n=4)
    degs = [(1, 0), (0, 1), (1, 0)]
    rec = check_pauli_multidegree(p4, degs)
    dense = multilinear_identity_space(p4, degs)
    assert rec.dim_target == dense.dim
    assert rec.equal
    fam = family_pauli(p4, 3)
    cons = tideal_consequences(fam, degs)
    assert cons.dim == rec.dim_consequence


def test_complex_fastpath_matches_full_enumeration():
    """Identity/central spaces computed from one representative per (b, J b)
    pair agree with the full basis-tuple enumeration."""
    import copy

    p3 = build_catalog("pauli", n=3)
    full = copy.copy(p3)
    full._complex_checked = True
    full._complex = None  # force full substitution tuples
    for degrees in ([(1, 0), (0, 1)], [(1, 0), (1, 0), (2, 1)]):
        fast_i = multilinear_identity_space(p3, degrees)
        slow_i = multilinear_identity_space(full, degrees)
        assert fast_i.dim == slow_i.dim
        for v in fast_i.basis():
            assert slow_i.contains(v)
        fast_c = multilinear_central_space(p3, degrees)
        slow_c = multilinear_central_space(full, degrees)
        assert fast_c.dim == slow_c.dim


def test_evaluate_zero_substitution():
    from gradedpi.freealg import evaluate

    alg = build_catalog("m2-4")
    f = commutator_poly(alg.group, degrees=[(1, 0), (0, 1)])
    val = evaluate(f, {(1, (1, 0)): {}, (2, (0, 1)): {}}, alg)
    assert val == {}


def test_exact_matrix_kernel_entry():
    from gradedpi.scalars import ExactMatrix, kernel_over_real_subfield

    m = ExactMatrix([[Cyclo.one(), -Cyclo.one()]],
                    row_labels=["r0"], col_labels=["m1", "m2"])
    basis = kernel_over_real_subfield(m)
    assert len(basis) == 1 and basis[0][0] == basis[0][1]


def test_commutative_cyclic_grading_completeness():
    alg = build_catalog("d-cyclic", m=3, eps=1)
    beta, witness = detect_regular(alg)
    assert witness is None and beta.radical() == alg.group.elements()
    rep_i = verify_basis(alg, family_regular(beta, "identities"), 3)
    rep_c = verify_basis(alg, family_regular(beta, "centrals"), 3)
    assert rep_i.ok and rep_c.ok


def test_coarsened_division_gradings_share_the_elementary_bases():
    """The order-two coarsenings of the quaternion and Sylvester gradings
    satisfy exactly the elementary-grading identities and centrals."""
    for name in ("h2", "m2-2"):
        alg = build_catalog(name)
        assert verify_basis(alg, dv_basis(alg.group), 3).ok
        assert verify_basis(alg, bp_basis(alg.group), 3).ok


def test_pauli3_family_members_vanish_on_explicit_matrices():
    """Independent oracle: emitted family members evaluate to zero on the
    actual 3x3 clock and shift matrices over Q(zeta_12), multiplying dense
    matrices rather than using the algebra's structure constants."""
    z3 = Cyclo.zeta(12, 4)
    i_s = Cyclo.zeta(12, 3)
    zero, one = Cyclo.zero(), Cyclo.one()

    def matmul(a, b):
        return tuple(tuple(sum((a[r][k] * b[k][c] for k in range(3)), zero)
                           for c in range(3)) for r in range(3))

    def matscale(s, a):
        return tuple(tuple(s * e for e in row) for row in a)

    def matadd(a, b):
        return tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))

    X = ((one, zero, zero), (zero, z3, zero), (zero, zero, z3 * z3))
    Y = ((zero, zero, one), (one, zero, zero), (zero, one, zero))
    I3 = ((one, zero, zero), (zero, one, zero), (zero, zero, one))

    def rep(degree, imag):
        s, t = degree
        m = I3
        for _ in range(s):
            m = matmul(m, X)
        for _ in range(t):
            m = matmul(m, Y)
        return matscale(i_s, m) if imag else m

    p3 = build_catalog("pauli", n=3)
    fam = family_pauli(p3, 3)
    zero_mat = tuple((zero,) * 3 for _ in range(3))
    random.seed(99)
    sample = random.sample(fam.s1, 40) + fam.extras[:5]
    for f in sample:
        letters = f.letters()
        # both the plain representatives and some i-twisted substitutions
        for imag_mask in (tuple(False for _ in letters),
                          tuple(k % 2 == 1 for k in range(len(letters)))):
            assign = {lt: rep(lt[1], imag_mask[k]) for k, lt in enumerate(letters)}
            total = zero_mat
            for mono, coeff in f.terms.items():
                m = I3
                for lt in mono:
                    m = matmul(m, assign[lt])
                total = matadd(total, matscale(coeff.lift(12), m))
            assert total == zero_mat, str(f)
