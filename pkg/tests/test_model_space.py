import pytest

from nilcent import exact_linalg as la
from nilcent.model_space import (
    AlgebraKind,
    EmptyPartition,
    InadmissiblePartition,
    IndexOutOfRange,
    Partition,
    admissible_partitions,
    bracket,
    build_model,
    epsilon_sign,
    preserves_form,
    sl2_triple,
)

KINDS = (AlgebraKind.SO, AlgebraKind.SP)


def all_models(max_n=8, kinds=KINDS):
    for kind in kinds:
        for n in range(1, max_n + 1):
            for p in admissible_partitions(n, kind):
                yield build_model(p, kind)


def test_symplectic_even_blocks_self_paired():
    m = build_model((4, 2), "SP")
    assert m.k == 2 and m.prime(1) == 1 and m.prime(2) == 2


def test_orthogonal_even_blocks_paired():
    m = build_model((3, 2, 2), "SO")
    assert (m.prime(1), m.prime(2), m.prime(3)) == (1, 3, 2)


def test_inadmissible_partition():
    with pytest.raises(InadmissiblePartition):
        build_model((3, 2), "SP")


def test_empty_partition():
    with pytest.raises(EmptyPartition):
        Partition(())


def test_general_linear_has_no_form():
    m = build_model((3, 1), "GL")
    assert m.Jmat is None and m.invol is None


@pytest.mark.parametrize("model", list(all_models()), ids=lambda m: f"{m.kind.name}{m.partition}")
def test_form_invariants(model):
    J, E, n = model.Jmat, model.Emat, model.n
    eps = model.eps
    assert all(J[c][r] == eps * J[r][c] for r in range(n) for c in range(n))
    assert la.det(J) != 0
    EtJ = la.matmul(la.transpose(E), J)
    JE = la.matmul(J, E)
    assert all(a + b == 0 for r1, r2 in zip(EtJ, JE) for a, b in zip(r1, r2))
    for i in range(1, model.k + 1):
        ip = model.prime(i)
        assert model.prime(ip) == i
        assert model.d[i - 1] == model.d[ip - 1]
        assert abs(ip - i) <= 1
        assert (i == ip) == ((-1) ** model.d[i - 1] * eps == 1)
        c = model.form((i, 0), (ip, model.d[i - 1]))
        assert c in (1, -1)
        if i <= ip:
            assert c == 1
        for s in range(model.d[i - 1]):
            assert model.form((i, 0), (ip, s)) == 0
        for j in range(1, model.k + 1):
            if j != ip:
                for a in range(model.d[i - 1] + 1):
                    for b in range(model.d[j - 1] + 1):
                        assert model.form((i, a), (j, b)) == 0


@pytest.mark.parametrize("model", list(all_models(7)), ids=lambda m: f"{m.kind.name}{m.partition}")
def test_e_is_skew_for_the_form(model):
    # (w, e^s v) = (-1)^s (e^s w, v)
    labels = model.basis_labels()
    for (i, a) in labels:
        for (j, b) in labels:
            for s in range(model.d[0] + 1):
                lhs = model.form((i, a), (j, b + s)) if b + s <= model.d[j - 1] else 0
                rhs = model.form((i, a + s), (j, b)) if a + s <= model.d[i - 1] else 0
                assert lhs == (-1) ** s * rhs


@pytest.mark.parametrize("model", list(all_models(7)), ids=lambda m: f"{m.kind.name}{m.partition}")
def test_epsilon_matches_form(model):
    for i in range(1, model.k + 1):
        for j in range(1, model.k + 1):
            di, dj = model.d[i - 1], model.d[j - 1]
            for s in range(min(di, dj) + 1):
                e = epsilon_sign(model, i, j, s)
                lhs = model.form((j, dj - s), (model.prime(j), s))
                ref = model.form((i, 0), (model.prime(i), di))
                assert e in (1, -1) and lhs == -e * ref


def test_epsilon_orthogonal_even_pair():
    # blocks with d_1, d_2 even in the orthogonal kind
    m = build_model((5, 3), "SO")
    assert epsilon_sign(m, 1, 2, m.d[1]) == -1


@pytest.mark.parametrize("parts", [(4, 2), (2, 2), (6, 4, 2), (4,)])
def test_epsilon_product_symplectic(parts):
    m = build_model(parts, "SP")
    for j in range(1, m.k + 1):
        for s in range(m.d[j - 1] + 1):
            assert epsilon_sign(m, j, 1, s) * epsilon_sign(m, 1, j, m.d[j - 1] - s) == -1


def test_epsilon_range_errors():
    m = build_model((4, 2), "SP")
    with pytest.raises(IndexOutOfRange):
        epsilon_sign(m, 3, 1, 0)
    with pytest.raises(IndexOutOfRange):
        epsilon_sign(m, 1, 2, 5)


def test_single_block_triple():
    t = sl2_triple(build_model((2,), "GL"))
    assert t.Hmat == [[-1, 0], [0, 1]]
    assert t.Fmat[0][1] == 1          # f(e w_1) = w_1


@pytest.mark.parametrize("model", list(all_models(7, tuple(AlgebraKind))),
                         ids=lambda m: f"{m.kind.name}{m.partition}")
def test_sl2_relations(model):
    t = sl2_triple(model)
    E, H, F = t.Emat, t.Hmat, t.Fmat
    assert bracket(E, F) == H
    assert bracket(H, E) == [[2 * x for x in row] for row in E]
    assert bracket(H, F) == [[-2 * x for x in row] for row in F]
    if model.Jmat is not None:
        assert preserves_form(model, H) and preserves_form(model, F)


def _ad_matrix(X):
    """Matrix of ``Y -> XY - YX`` on n x n matrices, flattened row-major."""
    n = len(X)
    cols = []
    for p in range(n):
        for q in range(n):
            Y = [[int(r == p and c == q) for c in range(n)] for r in range(n)]
            cols.append([v for row in bracket(X, Y) for v in row])
    return la.transpose(cols)


@pytest.mark.parametrize("parts", [(4, 2), (3, 2, 1), (2, 2, 1), (5,)])
def test_e_and_f_centralisers_have_equal_dimension(parts):
    model = build_model(parts, "GL")
    t = sl2_triple(model)
    n2 = model.n ** 2
    ad_e, ad_f = _ad_matrix(t.Emat), _ad_matrix(t.Fmat)
    ker_f = la.kernel_basis(ad_f, n2)
    assert len(la.kernel_basis(ad_e, n2)) == len(ker_f)
    image_e = la.transpose(ad_e)
    assert la.span_rank(image_e + ker_f, n2) == n2


def test_symplectic_f_preserves_form():
    model = build_model((4, 2), "SP")
    assert preserves_form(model, sl2_triple(model).Fmat)
