"""Parse a few ring expressions, build them and do some arithmetic."""

from ringlab import build, jacobson, local_factors, maximal_ideals, nilradical, parse, pretty

for text in ["Z/2[t]/(t^4+t)", "Z/4 (+) ideal(2)", "(Z/2 * Z/3) * GF(4)", "Z/8"]:
    R = build(text)
    print(f"{pretty(parse(text))}: {R.size} elements")
    print(f"  maximal ideals: {len(maximal_ideals(R))}, |J| = {len(jacobson(R))}, |Nil| = {len(nilradical(R))}")
    print(f"  local factor sizes: {[f.ring.size for f in local_factors(R).factors]}")

S = build("Z/2[t]/(t^4+t)")
a = S("t^2 + t")
print(f"in {S.name}: (t^2 + t)^2 = {S.format((a * a).index)}")
