"""Colorings counted by trying every assignment of elements to arcs.

Reads link files with its own minimal parser so it shares no code with the
package; operations are looked up in plain nested lists.
"""
import itertools


def read_link(text):
    labels, arcs, xc, xs = {}, {}, [], []
    for raw in text.splitlines():
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] == "component":
            labels[toks[1]] = int(toks[3])
        elif toks[0] == "arc":
            arcs[toks[1]] = toks[3]
        elif toks[0] == "xc":
            xc.append(tuple(toks[1:]))
        elif toks[0] == "xs":
            xs.append(tuple(toks[1:]))
    return labels, arcs, xc, xs


def count(text, op1, op2, r1, r2):
    labels, arcs, xc, xs = read_link(text)
    names = sorted(arcs)
    pos = {a: i for i, a in enumerate(names)}
    ops = {1: op1, 2: op2}
    n = len(op1)
    total = 0
    for c in itertools.product(range(n), repeat=len(names)):
        ok = all(c[pos[out]] == ops[labels[arcs[over]]][c[pos[uin]]][c[pos[over]]]
                 for over, uin, out in xc)
        ok = ok and all(c[pos[o1]] == r1[c[pos[i1]]][c[pos[i2]]] and c[pos[o2]] == r2[c[pos[i1]]][c[pos[i2]]]
                        for i1, i2, o1, o2 in xs)
        total += ok
    return total
