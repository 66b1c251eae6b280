"""Enumerate the minimal lens families along the fraction tree.

Every node p/q with p or q even folds along its even boundary edge; the
parity census of the result sorts the folds into the balanced family and
the two families with an exceptional even edge of degree five or six.
"""

from collections import Counter

from trinorm import build, first_homology

rows = build.enumerate_minimal_lens_families(8)
print(f"{len(rows)} qualifying folds to depth 8\n")
print(f"{'node':>8} {'tets':>5} {'lens':>12} {'class':>12}")
for node, rec, cls in rows[:20]:
    lens = f"L({rec.lens_a},{rec.lens_b})"
    print(f"{node.p:>4}/{node.q:<4} {node.depth:>4} {lens:>12} {cls:>12}")
print("   ...")

print("\nclassification counts:", dict(Counter(cls for _, _, cls in rows)))

print("\nthe balanced chain: deficiency (odd minus even) is one")
for node in build.lgraph(6):
    if node.p == 1 and node.q % 2 == 0:
        print(f"  node 1/{node.q}: even {node.e_bar}, odd {node.o_bar}, "
              f"deficiency {node.deficiency}")

print("\nhomology spot check on the deepest balanced fold")
node, rec, cls = max((r for r in rows if r[2] == "balanced"),
                     key=lambda r: r[0].depth)
tri, meta, record = build.lens_space(node.p, node.q,
                                     fold_weight=rec.fold_edge_weight)
print(f"  1/{node.q} -> L({rec.lens_a},{rec.lens_b}): "
      f"H1 = {first_homology(tri)}")
