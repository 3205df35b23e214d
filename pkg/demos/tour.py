"""A short walk through the library: encode, atomize, compare, refute.

    python demos/tour.py
"""
from polycalc import (
    beta_eta_normalize, build_iso_contexts, countermodel_search, eps_atomize, equiv_beta_eta, esf_translate,
    ff_atomize, three_world_countermodel, parse_context_decls, parse_formula, parse_term, rp_context, rp_formula,
    rp_term, show, typecheck, verify_trace,
)
from polycalc.proofs import atomization_chain, conjunction_eta_trace
from polycalc.suites import gamma_plus_counterexample


def heading(s: str) -> None:
    print(f"\n== {s}")


heading("a disjunction and its second-order encoding")
a = parse_formula("Y \\/ Z")
print(show(a), " ~> ", show(rp_formula(a)))

heading("a case analysis, encoded and atomized three ways")
ctx = parse_context_decls("x: Y \\/ Z; f: Y -> W -> W; g: Z -> W -> W")
u = parse_term("case#or[W -> W](x; y => f y | z => g z)")
print("term     ", show(u), ":", show(typecheck(ctx, u, "NIP")))
cs = rp_context(ctx)
star = rp_term(ctx, u)
print("encoded  ", show(star))
print("FF       ", show(ff_atomize(cs, star)))
print("eps      ", show(eps_atomize(cs, star)))
print("direct   ", show(esf_translate(ctx, u)))
for t in (ff_atomize(cs, star), eps_atomize(cs, star), esf_translate(ctx, u)):
    assert show(typecheck(cs, t, "NI2AT")) == show(typecheck(cs, star, "NI2RP"))
first, second = atomization_chain(ctx, u)
print(f"beta traces FF -> eps ({len(first.steps)} steps) and eps -> direct ({len(second.steps)} steps):",
      bool(verify_trace(first)) and bool(verify_trace(second)))

heading("a permutation the atomic translations do not respect")
r = gamma_plus_counterexample()
print(show(r["source"]), " ~> ", show(r["target"]))
print("direct images:", show(beta_eta_normalize(r["esf"][0])), " vs ", show(beta_eta_normalize(r["esf"][1])))
print("beta-eta equivalent?", equiv_beta_eta(*r["esf"]))

heading("surjective pairing from beta, eta and gamma+")
tr, chain = conjunction_eta_trace()
print(f"{len(tr.steps)} steps, verified:", bool(verify_trace(tr)))

heading("the encoding of disjunction is weaker than disjunction")
m = three_world_countermodel()
enc = parse_formula("(forall X. (Y -> X) -> (Z -> X) -> X) -> Y \\/ Z")
print("bottom world forces", show(enc), "?", m.forces(m.bottom, enc))
found = countermodel_search(enc, 3)
print("search finds a countermodel:", found.dumps())
c, d = build_iso_contexts(a)
print("but with non-atomic witnesses the two are interderivable:")
print("  ", show(c))
print("  ", show(d))
