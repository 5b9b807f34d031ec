"""Certificates for primitive rank-4 association schemes built as fusions of
the translation scheme of F_q^2, compared against the exact motion."""

from ccmotion import families as fam
from ccmotion.certify import certify, replay
from ccmotion.core import order_by_degree
from ccmotion.oracle import automorphisms

for q, parts in ((5, [2, 2, 2]), (7, [2, 2, 4]), (7, [2, 3, 3])):
    cfg = order_by_degree(fam.gen_affine_fusion(q, parts))
    cert = certify(cfg)
    print(f"F_{q}^2 with line classes {parts}: n={cfg.n}, branch {cert.branch}")
    for st in cert.steps:
        mark = "+" if st.holds else "-"
        extra = f"  [bound {st.bound}]" if st.bound is not None else ""
        print(f"  {mark} {st.rule}: {st.conclusion}{extra}")
    motion = automorphisms(cfg).motion
    print(f"  verdict {cert.verdict}, exact motion {motion}, replay ok: {all(replay(cert, cfg))}\n")
