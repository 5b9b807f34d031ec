"""Line graphs of triangle-free regular graphs as constituents: root graph
reconstruction and why the usual bases fall outside the diameter-2 case."""

from ccmotion import families as fam
from ccmotion import geometry as geo
from ccmotion.certify import line_graph_branch
from ccmotion.core import intersection_tensor

bases = {
    "Petersen": fam.petersen_graph(),
    "Heawood": fam.heawood_graph(),
    "K_{3,3}": fam.complete_bipartite(3, 3),
}
for name, base in bases.items():
    cfg = fam.line_graph_scheme(base).config
    t = intersection_tensor(cfg)
    color = next(i for i in t.edge_colors if t.k[i] == 2 * (int(base.sum(1)[0]) - 1))
    root = geo.line_graph_root(cfg.adjacency(color))
    print(f"L({name}): n={cfg.n}, rank {t.r}, degrees {t.k.tolist()}, "
          f"root has {len(root.adj)} vertices and {int(root.adj.sum()) // 2} edges, "
          f"bipartite={fam.is_bipartite(root.adj)}")
    for st in line_graph_branch(cfg, color):
        print(f"  {st.rule}: {st.conclusion}")
