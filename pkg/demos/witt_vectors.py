"""
Witt vectors over finite fields
===============================

W_n(F_p) is the ring Z/p^n, and the Witt sum carries exactly like integer
addition in base p (with Teichmuller digits).  Over F_q the trace down to
W_n(F_p) lands in Z/p^n.
"""

from aswitt import WittVec, finite_field, teichmuller, wittvec_trace
from aswitt.witt import int_to_witt, witt_to_int

F2 = finite_field(2)

# 1 + 1 = 2 in Z/4 is the carry (1, 0) + (1, 0) = (0, 1)
one = teichmuller(F2.one, 2, F2)
print("(1,0) + (1,0) =", one + one)

# the whole addition table of W_2(F_2), read back as integers mod 4
for k in range(4):
    row = [witt_to_int(int_to_witt(k, F2, 2) + int_to_witt(j, F2, 2)) for j in range(4)]
    print(k, row)

# Frobenius is componentwise in characteristic p, and F V = p
a = WittVec(F2, [F2.one, F2.zero])
print("p * [1] =", a.scalar(2), " F V [1] =", a.verschiebung(keep_length=True).frobenius())

# over F_4 the trace of [g] is [g] + [g^2] in W_2(F_2) = Z/4
F4 = finite_field(2, 2)
g = F4.gen
print("[g] + [g^2] =", teichmuller(g, 2, F4) + teichmuller(g * g, 2, F4))
print("trace of [g] in Z/4:", wittvec_trace(teichmuller(g, 2, F4)))
