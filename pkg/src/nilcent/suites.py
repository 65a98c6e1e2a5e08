"""Verification suites shared by the CLI and the acceptance tests.

Each suite appends check records to a report.  Cases run in a fixed order
(kind, then size, then partition), so reports are deterministic for a seed.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import exact_linalg as la
from .centralizer import (
    build_algebra,
    centraliser_dimension_by_kernel,
    normalise_table,
    structure_from_formula,
    structure_from_oracle,
)
from .groebner import SizeGuardExceeded
from .invariants import (
    expected_degree,
    is_invariant,
    monomial_invariant,
    proportionality,
    psi_expected_label,
    psi_restriction,
    restricted_invariants,
)
from .model_space import AlgebraKind, admissible_partitions, build_model
from .poly_algebra import SparsePoly, xi
from .reports import Report
from .structure_analysis import (
    ambient_rank,
    centre,
    estimate_index,
    has_extra_central_element,
    nilpotent_pair,
    regularity_certificates,
)
from .varieties import (
    component_witnesses,
    degeneration_family,
    degeneration_point,
    moment_map_defects,
    nonradical_witness,
    nullcone_ideal,
    sample_two_block,
    regular_sequence_checks,
    split_components,
    two_block_pair,
)

SUITES = ("structure", "centre", "pairs", "index", "codim3", "invariants", "commvar",
          "nullcone", "section8", "shift")
SKIPPED = "SKIPPED"


def _cases(kinds, max_n: int):
    for kind in kinds:
        for n in range(1, max_n + 1):
            for p in admissible_partitions(n, kind):
                yield kind, p.parts


def _tag(kind, parts) -> str:
    return f"{kind.name} {','.join(map(str, parts))}"


def _alg(kind, parts):
    return build_algebra(build_model(parts, kind))


ALL_KINDS = (AlgebraKind.GL, AlgebraKind.SO, AlgebraKind.SP)


def structure_suite(rep: Report, max_n: int = 8, seed: int = 0) -> None:
    for kind, parts in _cases(ALL_KINDS, max_n):
        alg = _alg(kind, parts)
        same = normalise_table(structure_from_formula(alg)) == normalise_table(structure_from_oracle(alg))
        rep.add(f"brackets formula = commutators [{_tag(kind, parts)}]", "structure-constants",
                True, same)
    rep.add("SP 4,2 bracket table", "sp-4-2-bracket-table", True, sp42_table_matches())


def sp42_table_matches() -> bool:
    """Exactly ``[ξ, ξ_1^{1,1}] = [ξ_2^{2,1}, ξ] = η`` and ``[η, ξ] = 2 ξ_1^{1,3}``.

    Here ``ξ`` is the generator labelled (1,2,0) and ``η`` the one labelled (1,2,1).
    """
    alg = _alg(AlgebraKind.SP, (4, 2))
    I = alg.index_of
    x, eta = I[(1, 2, 0)], I[(1, 2, 1)]
    want = {
        (x, I[(1, 1, 1)]): [(eta, Fraction(1))],
        (I[(2, 2, 1)], x): [(eta, Fraction(1))],
        (eta, x): [(I[(1, 1, 3)], Fraction(2))],
    }
    got = {k: sorted(v) for k, v in alg.structure.items() if v}
    full = dict(want)
    for (a, b), terms in want.items():
        full[(b, a)] = [(c, -v) for c, v in terms]
    return got == full


def centre_suite(rep: Report, max_n: int = 9, seed: int = 0) -> None:
    for kind, parts in _cases(ALL_KINDS, max_n):
        alg = _alg(kind, parts)
        res = centre(alg)
        rep.add(f"centre dimension [{_tag(kind, parts)}]", "centre-dimension",
                res.expected_dim, res.dim)
        if has_extra_central_element(alg.model):
            ok = res.extra is not None and la.span_rank(res.basis + [res.extra], alg.dim) == res.dim
            rep.add(f"extra central element [{_tag(kind, parts)}]", "orthogonal-extra-centre",
                    True, ok)


def pairs_suite(rep: Report, max_n: int = 10, seed: int = 0) -> None:
    for kind, parts in _cases(ALL_KINDS, max_n):
        r = nilpotent_pair(_alg(kind, parts))
        rep.add(f"pair element nilpotent [{_tag(kind, parts)}]", "commuting-pair-element",
                True, r.nilpotent)
        rep.add(f"dim g_(e,x) = rank [{_tag(kind, parts)}]", "commuting-pair-rank",
                r.expected, r.dim)


def index_suite(rep: Report, max_n: int = 8, seed: int = 0) -> None:
    for kind, parts in _cases(ALL_KINDS, max_n):
        alg = _alg(kind, parts)
        rep.add(f"index [{_tag(kind, parts)}]", "index-equals-rank",
                ambient_rank(alg.model), estimate_index(alg, samples=20, seed=seed))


def codim3_suite(rep: Report, max_n: int = 8, seed: int = 0) -> None:
    for kind, parts in _cases((AlgebraKind.GL,), max_n):
        alg = _alg(kind, parts)
        r = regularity_certificates(alg, samples=50, t_samples=10, seed=seed)
        tag = _tag(kind, parts)
        anchor = "three-point-regularity"
        rep.add(f"coranks at alpha, beta, gamma [{tag}]", anchor,
                [r.expected] * 3, [r.coranks[k] for k in ("alpha", "beta", "gamma")])
        rep.add(f"corank on 50 span points [{tag}]", anchor, True,
                all(c == r.expected for c in r.plane_coranks + r.span_coranks))
        rep.add(f"gamma stabiliser chain basis [{tag}]", anchor, True, r.gamma_basis_matches)
        rep.add(f"scaling identity at 10 values of t [{tag}]", anchor, True,
                r.scaling_ok and r.rho_matches_matrices)


def invariant_case(rep: Report, parts) -> None:
    """Slice, monomial and fingerprint routes for every generator of one GL case."""
    alg = _alg(AlgebraKind.GL, parts)
    tag = _tag(AlgebraKind.GL, parts)
    inv = restricted_invariants(alg)
    for ell, m, p in inv.items:
        anchor = "invariant-triple-agreement"
        rep.add(f"degree of invariant {ell} [{tag}]", anchor, expected_degree(alg.model, ell), m)
        rep.add(f"invariant {ell} Poisson-central [{tag}]", anchor, True, is_invariant(alg, p))
        c = proportionality(monomial_invariant(alg, ell, m), p)
        rep.add(f"monomial formula proportional to slice, invariant {ell} [{tag}]", anchor,
                True, c is not None and c != 0)
        img = psi_restriction(alg, p)
        want = xi(*psi_expected_label(alg.model, ell, m))
        single = proportionality(img, SparsePoly.var(want))
        rep.add(f"fingerprint image of invariant {ell} [{tag}]", anchor, str(want),
                str(want) if single else str(img))


def invariants_suite(rep: Report, max_n: int = 8, seed: int = 0) -> None:
    for kind, parts in _cases((AlgebraKind.GL,), max_n):
        invariant_case(rep, parts)
    alg = _alg(AlgebraKind.GL, (4, 2))
    inv = restricted_invariants(alg)
    rep.add("degrees for GL 4,2", "invariant-degrees", [1, 1, 1, 1, 2, 2], inv.degrees)
    rep.add("degree sum for GL 4,2", "invariant-degrees", (alg.dim + ambient_rank(alg.model)) // 2,
            sum(inv.degrees))


def commvar_suite(rep: Report, max_n: int = 8, seed: int = 0, samples: int = 100,
                  lambdas: int = 10) -> None:
    for n_small in range(1, 5):
        for m_big in range(n_small, max(n_small, max_n - n_small) + 1):
            tag = f"GL {m_big},{n_small}"
            alg = _alg(AlgebraKind.GL, (m_big, n_small))
            rng = random.Random(seed * 1009 + 31 * m_big + n_small)
            eq_ok = zero_ok = True
            for _ in range(samples):
                data = sample_two_block(m_big, n_small, rng)
                eq_ok &= data.satisfies()
                x, al = two_block_pair(alg, data)
                zero_ok &= not moment_map_defects(alg, x, al)
            rep.add(f"{samples} samples satisfy the equations [{tag}]", "two-block-equations",
                    True, eq_ok)
            rep.add(f"{samples} samples are moment-map zeros [{tag}]", "two-block-dictionary",
                    True, zero_ok)
            fam_ok = True
            for k in range(lambdas):
                d = 1 + k % n_small
                data = degeneration_point(m_big, n_small, d, rng)
                lams = [Fraction(rng.randint(1, 40), rng.randint(1, 40)) * rng.choice((1, -1))
                        for _ in range(10)]
                chk = degeneration_family(data, lams)
                fam_ok &= chk.all_hold and chk.in_open_set
            rep.add(f"degeneration family at {lambdas} points [{tag}]", "two-block-degeneration",
                    True, fam_ok)


def _two_block_parts(max_n: int):
    for total in range(2, max_n + 1):
        for n_small in range(1, total // 2 + 1):
            yield (total - n_small, n_small)


def _hook_parts(max_n: int):
    for total in range(3, max_n + 1):
        for m in range(1, total - 1):
            yield (total - m,) + (1,) * m


def nullcone_suite(rep: Report, max_n: int = 8, seed: int = 0) -> None:
    w = nonradical_witness()
    anchor = "non-radical-witness"
    rep.add("displayed identity for the square", anchor, True, w.identity_holds)
    rep.add("generators match the display up to scalars", anchor, True, w.matches_display)
    rep.add("witness has nonzero normal form", anchor, True, bool(w.witness_normal_form))
    rep.add("square of the witness reduces to zero", anchor, True, not w.square_normal_form)
    cases = [(p, "hook") for p in _hook_parts(min(max_n, 7))]
    cases += [(p, "two-block") for p in _two_block_parts(min(max_n, 8))]
    for parts, fam in cases:
        tag = _tag(AlgebraKind.GL, parts)
        anchor = "nullcone-components"
        try:
            r = component_witnesses(_alg(AlgebraKind.GL, parts), seed=seed)
        except SizeGuardExceeded:
            rep.add(f"null-cone components [{tag}]", anchor, "checked", SKIPPED, False)
            continue
        rep.add(f"component count [{tag}]", anchor, r.expected_count, r.count)
        rep.add(f"components lie in the null-cone [{tag}]", anchor, True, all(r.vanish))
        rep.add(f"components pairwise distinct [{tag}]", anchor, True, r.distinct)
        rep.add(f"component dimensions [{tag}]", anchor, True, r.ok)
    alg = _alg(AlgebraKind.GL, (3, 2, 1))
    nc = nullcone_ideal(alg)
    res = split_components(nc.ideal, alg.dim - ambient_rank(alg.model))
    name = "component count [GL 3,2,1]"
    if res.status == "done":
        rep.add(name, "nullcone-components", 4, res.count)
    else:
        rep.add(name, "nullcone-components", 4, f"{SKIPPED}: {res.status}", False)


REGULAR_SEQUENCE_CASES = ((AlgebraKind.SP, (2, 2)), (AlgebraKind.SP, (4, 2)),
                  (AlgebraKind.SO, (3, 1)), (AlgebraKind.SO, (3, 3)))


def regular_sequence_suite(rep: Report, max_n: int = 8, seed: int = 0) -> None:
    for kind, parts in REGULAR_SEQUENCE_CASES:
        tag = _tag(kind, parts)
        anchor = "regular-sequence-family"
        try:
            r = regular_sequence_checks(_alg(kind, parts), retries=25, seed=seed)
        except SizeGuardExceeded:
            rep.add(f"codimension of the invariant ideal [{tag}]", anchor, "checked", SKIPPED, False)
            continue
        rep.add(f"codimension of the invariant ideal [{tag}]", anchor, r.rank, r.codimension)
        rep.add(f"subspace dimension [{tag}]", anchor, r.rank, len(r.subspace))
        rep.add(f"restricted ideal dimension [{tag}]", anchor, 0, r.restricted_dimension)


def shift_suite(rep: Report, max_n: int = 8, seed: int = 0, trials: int = 10) -> None:
    """Shift behaviour on SP (4,2): regular and singular base points."""
    from .structure_analysis import (
        Verdict,
        corank,
        directional_derivative,
        element_centraliser,
        linear_element,
        random_vector,
        strange_condition,
    )
    alg = _alg(AlgebraKind.SP, (4, 2))
    H = restricted_invariants(alg).polys
    rng = random.Random(seed)
    derived = [xi(1, 1, 3), xi(1, 2, 1)]     # coordinates spanning [g_e, g_e]
    anchor = "sp-4-2-shift"
    dims, props = [], []
    for _ in range(trials):
        a = random_vector(alg.dim, rng)
        if corank(alg, a) != 3:
            continue
        x = linear_element(alg, directional_derivative(alg, H[2], a))
        dims.append(len(element_centraliser(alg, x)))
        b = list(a)
        for v in derived:
            b[alg.var_index[v]] = Fraction(0)
        props.append(proportionality(directional_derivative(alg, H[2], b), H[1]) is not None)
    rep.add("regular base point: dim (g_e)_x > 3", anchor, True, bool(dims) and min(dims) > 3)
    rep.add("singular base point: derivative proportional to H_2", anchor, True,
            bool(props) and all(props))
    rep.add("stabiliser condition", anchor, Verdict.HOLDS_ON_SAMPLES.value,
            strange_condition(alg, seed=seed).verdict.value)


RUNNERS = {
    "structure": structure_suite,
    "centre": centre_suite,
    "pairs": pairs_suite,
    "index": index_suite,
    "codim3": codim3_suite,
    "invariants": invariants_suite,
    "commvar": commvar_suite,
    "nullcone": nullcone_suite,
    "section8": regular_sequence_suite,
    "shift": shift_suite,
}


def run_suite(name: str, rep: Report, max_n: int | None = None, seed: int = 0) -> None:
    names = SUITES if name == "all" else (name,)
    for s in names:
        if max_n is None:
            RUNNERS[s](rep, seed=seed)
        else:
            RUNNERS[s](rep, max_n=max_n, seed=seed)
