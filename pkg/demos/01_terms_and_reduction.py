"""Parse SK terms, inspect their structure and reduce them in normal order."""

from __future__ import annotations

from clquant import SK, normalize, parse, to_text, trace
from clquant.reduce import FuelExhausted
from clquant.simpletypes import infer_principal_type, type_text
from clquant.term import omega_omega

# Application associates to the left: "S K K K" is ((S K) K) K.
t = parse("S K K K")
print("term:", to_text(t), "size:", t.size, "head:", t.head, "args:", t.nargs)

# Every intermediate term of the leftmost-outermost reduction.
for i, u in enumerate(trace(t, SK, 10)):
    print(f"  step {i}: {to_text(u)}")

# S K K behaves as the identity and has the type a -> a.
i_comb = parse("S K K")
print("type of S K K:", type_text(infer_principal_type(i_comb, SK)))

# A term without a normal form runs out of fuel.
out = normalize(omega_omega(SK), SK, 200)
assert isinstance(out, FuelExhausted)
print("omega omega after 200 steps:", to_text(out.last)[:60], "...")
print("typeable?", infer_principal_type(omega_omega(SK), SK) is not None)
