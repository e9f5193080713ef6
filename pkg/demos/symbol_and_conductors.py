"""
The Artin-Schreier-Witt symbol and two conductors
=================================================

A character of K = F_q((t)) is a class of Witt vectors modulo (1-F).  We
reduce a representative, pair it against units of K, and compare the
Matsuda level with the smallest m for which the character kills U^m.
"""

from aswitt import (conductor_dual, conductor_fil, fil_log_level, finite_field,
                    parse_laurent, parse_witt, reduce_class, sw_pair)

F2 = finite_field(2)

# t^-2 is t^-1 modulo (1-F): (1-F)(t^-1) = t^-1 - t^-2
x = reduce_class(parse_witt("(t^-2)", F2))
print("reduced:", x.rep, "certificate:", x.trail)

# the n = 1 symbol is Tr Res(a dlog b); here Res(t^-1 dt/(1+t)) = 1
print("[t^-1, 1+t) =", sw_pair(x, parse_laurent("1+t", F2)))

# length 2: values live in Z/4
a = parse_witt("(t^-3; t^-1)", F2)
for b in ("t", "1+t", "1+t^3", "1+t^5"):
    print(f"[{a}, {b}) =", sw_pair(a, parse_laurent(b, F2)))

# conductors for a handful of characters
print("\nclass           fil_log  fil  Fil")
for text in ("(1)", "(t^-1)", "(t^-3)", "(t^-1; 0)", "(0; t^-3)", "(t^-1; t^-3)"):
    x = reduce_class(parse_witt(text, F2))
    print(f"{text:15s} {fil_log_level(x):7d} {conductor_fil(x):4d} {conductor_dual(x):4d}")

# the unramified character (1) has fil-level 1 but kills every unit: the
# two notions only agree for levels m >= 1
