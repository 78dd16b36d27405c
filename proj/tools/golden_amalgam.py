#!/usr/bin/env python3
"""One-shot generator for the frozen disjoint-levels Q-amalgam golden data.

Instance: widths (1,2); p = ({0}, {(0,0)}), q = ({1}, {(1,0)}), both with the
single row [1]; the unique order isomorphism sends (0,0) to (1,0) and the
overlap is empty. Applies the amalgamation clauses and the derived-algebra
definition directly. Output: data/amalgam_q.txt (the amalgam) and
data/amalgam_q_algebra.txt (its algebra), committed as golden.
"""

WIDTHS = [1, 2]
U_R = [(0, 0), (1, 0)]

# clause for (0,0): level in w^p \ w^q -> f^p union f^q_{H(0,0)}
#   on u^p: f^p_{(0,0)} = 1 at (0,0); on u^q: f^q_{(1,0)} = 1 at (1,0)
# clause for (1,0): level in w^q \ w^p -> 0 on u^p, f^q on u^q
ROWS = {
    (0, 0): {(0, 0): 1, (1, 0): 1},
    (1, 0): {(0, 0): 0, (1, 0): 1},
}


def shift_below(row, level, eps):
    return {s: (0 if s[0] == level and s[1] < eps else v) for s, v in row.items()}


def main():
    with open("data/amalgam_q.txt", "w") as f:
        f.write("# amalgam of the disjoint-levels pair, widths (1,2)\n")
        f.write("qcond v1\n")
        f.write("chi 1 2\n")
        f.write("w 0 1\n")
        f.write("u (0,0) (1,0)\n")
        for s in U_R:
            bits = "".join(str(ROWS[s][t]) for t in U_R)
            f.write(f"f ({s[0]},{s[1]}): {bits}\n")

    rows = set()
    rows.add("0" * len(U_R))
    for s in U_R:
        for z in range(WIDTHS[s[0]] + 1):
            shifted = shift_below(ROWS[s], s[0], z)
            rows.add("".join(str(shifted[t]) for t in U_R))
    with open("data/amalgam_q_algebra.txt", "w") as f:
        f.write("# derived algebra of data/amalgam_q.txt\n")
        f.write("algebra v1\n")
        f.write(f"w {len(U_R)}\n")
        for r in sorted(rows):
            f.write("f " + r + "\n")
    print(sorted(rows))


if __name__ == "__main__":
    main()
