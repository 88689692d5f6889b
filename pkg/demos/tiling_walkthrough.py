"""Walk through one Yrrap base from orbit to gap morphism.

    python3 demos/tiling_walkthrough.py [name]

The default is gm2 (beta^2 = 3 beta - 1).  Try golden or two as well.
"""
import sys

from negbeta import (INF, derive_gap_morphism, fixed_point_view, format_word, gap_labels, is_yrrap,
                     named_context, psi_system, z_enumerate)

name = sys.argv[1] if len(sys.argv) > 1 else "gm2"
ctx = named_context(name)
b = ctx.beta
print(f"base {name}: {ctx.base}")

# the left endpoint orbit is finite, so the alphabet will be too
v = is_yrrap(ctx)
for n in range(v.preperiod + v.period + 1):
    t = ctx.t(n)
    print(f"  t_{n} = {t.exact_str():>16}  ~ {t.decimal(6)}")
print(f"  preperiod {v.preperiod}, period {v.period}")

s = psi_system(ctx)
letters, _ = s.reachable([s.letter(INF, 0), s.letter(0, INF)])
print("\nanti-morphism on the alphabet:")
for u in letters:
    print(f"  {u} -> {format_word(s.psi(u))}   length {s.length(u).exact_str()}")

view = fixed_point_view(ctx)
print("\nfixed point around the origin:")
print("  ", format_word(view.window(-6, 5)))

gm = derive_gap_morphism(ctx)
print("\ngaps between consecutive integers of the base:")
for letter_id, word in gm.words.items():
    print(f"  {letter_id} = {format_word(word)}  length {gm.lengths[letter_id].exact_str()}")
print("  morphism:", gm.format_rules())

win = z_enumerate(ctx, (-b ** 3, b ** 2))
print(f"\n{len(win.z_points)} points in [-b^3, b^2]:")
print("  ", " ".join(z.decimal(3) for z in win.z_points))
print("   gap letters:", gap_labels(win, gm))
