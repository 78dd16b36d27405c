#!/usr/bin/env python3
"""One-shot generator for the frozen 6-index interleaved-base golden data.

Computes, directly from the definitions and independently of the C++ code:
  - the interleaved strings eta_a (depth 6, alphabet 2, blocks (0,3,6))
  - the splitting set A (all even-length strings below depth 6)
  - the derived-algebra rows f_a over the 6 generators

Output: data/base6.txt and data/base6_algebra.txt. Run once; outputs are
committed and treated as golden.
"""

DEPTH = 6
CHI = [0, 3, 6]
NU = ["100", "011"]
RHO = ["000", "001", "010", "011", "100", "101"]


def block(a):
    for j in range(len(CHI) - 1):
        if CHI[j] <= a < CHI[j + 1]:
            return j
    raise ValueError(a)


def interleave(a):
    nu, rho = NU[block(a)], RHO[a]
    out = []
    for k in range(DEPTH // 2):
        out.append(nu[k])
        out.append(rho[k])
    return "".join(out)


def even_strings():
    out = [""]
    layer = [""]
    for _ in range(0, (DEPTH - 2) // 2):
        layer = [s + c1 + c2 for s in layer for c1 in "01" for c2 in "01"]
        out.extend(layer)
    return out


def meet(s, t):
    i = 0
    while i < len(s) and i < len(t) and s[i] == t[i]:
        i += 1
    return s[:i]


def main():
    eta = [interleave(a) for a in range(CHI[-1])]
    A = set(even_strings())
    L = len(eta)
    rows = []
    for a in range(L):
        bits = []
        for b in range(L):
            if b == a:
                bits.append("1")
            elif meet(eta[a], eta[b]) in A and eta[a] < eta[b]:
                bits.append("1")
            else:
                bits.append("0")
        rows.append("".join(bits))

    with open("data/base6.txt", "w") as f:
        f.write("# interleaved base: depth 6, two blocks of three\n")
        f.write("base v1\n")
        f.write(f"depth {DEPTH}\n")
        f.write("alphabet 2\n")
        f.write("chi " + " ".join(map(str, CHI)) + "\n")
        for s in sorted(A, key=lambda s: (len(s), s)):
            f.write("A " + (s if s else "-") + "\n")
        for i, e in enumerate(eta):
            f.write(f"eta {i} {e}\n")

    with open("data/base6_algebra.txt", "w") as f:
        f.write("# derived algebra of data/base6.txt, one row per index\n")
        f.write("algebra v1\n")
        f.write(f"w {L}\n")
        for r in sorted(set(rows)):
            f.write("f " + r + "\n")

    for i, e in enumerate(eta):
        print(i, e, rows[i])


if __name__ == "__main__":
    main()
