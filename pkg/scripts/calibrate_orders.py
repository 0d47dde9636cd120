"""Search path-sequence order parameters for the named presets.

For every combination of symbol precedence, word mode, leaf-sequence mode,
priority and g-weighting, complete the dual Greg relations (zero coproduct,
n = 1, and max coproduct, n = 2) up to arity 4 and report which settings give
a quadratic basis with (n+1)m - n normal forms; also flag the ones whose
normal forms are right combs reading y* g? x* from the root.
"""

from __future__ import annotations

import argparse
import itertools
import json

from gregops.coalgebra import delta_max, zero_coalgebra
from gregops.shuffle import (MonomialOrder, check_freeness_shapes, complete, count_normal_forms,
                             dual_presentation, expand_symmetric_to_shuffle,
                             greg_presentation, is_dlp_shape, normal_forms, sub_alphabet)


def orders(n: int):
    gs_desc = tuple(f"g{k}" for k in range(n, 0, -1))
    blocks = {"x": ("x",), "y": ("y",), "g": gs_desc}
    for prec in itertools.permutations("xyg"):
        symbols = sum((blocks[b] for b in prec), ())
        for word, perm, prio, weighted in itertools.product(
                ("deglex", "revdeglex"), ("lex", "revlex"), ("paths", "perm"), (False, True)):
            weights = tuple((g, 1) for g in gs_desc) if weighted else ()
            label = dict(top="".join(prec), word_mode=word, perm_mode=perm, priority=prio,
                         weighted=weighted)
            yield label, MonomialOrder(symbols, word, perm, prio, weights)


def evaluate(C, order, arities=(3, 4, 5)):
    n = C.dim
    R = complete(expand_symmetric_to_shuffle(dual_presentation(C)), order, max_arity=4)
    syms = ("x", "y") + tuple(f"g{k}" for k in range(1, n + 1))
    counts = [count_normal_forms(R, m, syms) for m in arities]
    want = [(n + 1) * m - n for m in arities]
    shape = all(is_dlp_shape(t) for m in arities for t in normal_forms(R, m, syms))
    return {"quadratic": R.is_quadratic() and not R.added, "counts": counts,
            "ok": counts == want and not R.added, "dlp_shape": shape}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--witness", action="store_true",
                    help="also complete Greg^C itself under the reversed order")
    args = ap.parse_args(argv)
    rows = []
    for (label, o1), (_, o2) in zip(orders(1), orders(2)):
        r1 = evaluate(zero_coalgebra(1), o1)
        r2 = evaluate(delta_max(2), o2)
        row = {**label, "n1": r1, "n2": r2}
        if args.witness and r1["ok"] and r2["ok"]:
            W = complete(expand_symmetric_to_shuffle(greg_presentation(delta_max(2))),
                         o2.reversed(), max_arity=4)
            rep = check_freeness_shapes(W, sub_alphabet(1))
            syms = ("x", "y", "g1", "g2")
            row["witness"] = {"quadratic": not W.added,
                              "counts": [count_normal_forms(W, m, syms) for m in (3, 4)],
                              **{k: getattr(rep, k) for k in ("left", "right", "ns_root", "ns_comb")}}
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=1))
        return
    for row in rows:
        if row["n1"]["ok"] and row["n2"]["ok"]:
            flags = "dlp-shape" if row["n1"]["dlp_shape"] and row["n2"]["dlp_shape"] else ""
            extra = f" witness={row.get('witness')}" if args.witness else ""
            print(f"top={row['top']} word={row['word_mode']} perm={row['perm_mode']} "
                  f"prio={row['priority']} weighted={row['weighted']} {flags}{extra}")


if __name__ == "__main__":
    main()
