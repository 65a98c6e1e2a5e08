"""A short tour: one symplectic and one general linear centraliser.

Run with ``python demos/tour.py``.
"""
from nilcent.centralizer import build_algebra
from nilcent.invariants import restricted_invariants
from nilcent.model_space import build_model
from nilcent.poly_algebra import to_text
from nilcent.structure_analysis import ambient_rank, centre, estimate_index, strange_condition
from nilcent.varieties import component_witnesses, nonradical_witness, nullcone_ideal


def show_algebra(parts, kind):
    alg = build_algebra(build_model(parts, kind))
    print(f"== {kind} {parts}: dim {alg.dim}, index {estimate_index(alg)} (rank {ambient_rank(alg.model)})")
    for g in alg.basis:
        print("  basis:", g)
    for (a, b), terms in sorted(alg.structure.items()):
        if a < b and terms:
            rhs = " + ".join(f"{c}*{alg.vars[i]}" for i, c in terms)
            print(f"  [{alg.vars[a]}, {alg.vars[b]}] = {rhs}")
    print("  centre dimension:", centre(alg).dim)
    for key, deg, p in restricted_invariants(alg).items:
        print(f"  invariant {key} (degree {deg}): {to_text(p)}")
    return alg


def main():
    sp = show_algebra((4, 2), "SP")
    print("  stabiliser condition:", strange_condition(sp).verdict.value)

    gl = build_algebra(build_model((4, 2), "GL"))
    nc = nullcone_ideal(gl)
    print(f"== GL (4, 2) null-cone on {len(nc.coordinates)} free coordinates")
    for key, deg, p in nc.generators:
        print(f"  generator {key} (degree {deg}): {to_text(p)}")
    w = nonradical_witness()
    print("  witness:", to_text(w.witness))
    print("  witness in the ideal:", not w.witness_normal_form, "| square in the ideal:", not w.square_normal_form)
    rep = component_witnesses(gl)
    print(f"  components: {rep.count} (claimed {rep.expected_count}), certified: {rep.ok}")


if __name__ == "__main__":
    main()
