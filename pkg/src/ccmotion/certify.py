"""Rank-4 certification pipeline.

Every step is produced by a named rule applied to the degree-ordered
configuration with JSON-serializable parameters.  A step records the
quantities it checked, whether its conclusion holds, and an optional motion
lower bound.  Branch theorems are evaluated through their conclusions (exact
spectra, exact distinguishing counts); the tool emits a bound only when the
inequality behind it has been verified on the instance.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import geometry as geo
from .core import (
    Configuration,
    IntersectionTensor,
    from_adjacency,
    intersection_tensor,
    order_by_degree,
    structural_flags,
)
from .distinguish import best_bounded_degree_bound, distinguishing_report, pair_distinguishing
from .errors import (
    BranchMismatch,
    CCMotionError,
    HypothesisViolated,
    NoOutcome,
    NoSuchTriangle,
    NotCoherent,
    NotLineGraph,
    NotPrimitive,
    NotRank4,
    NotTriangular,
    PreconditionViolated,
    SoundnessError,
)
from .families import hamming_array, is_bipartite, johnson_array
from .spectral import certified_spectral_bound, constituent_spectrum, union_spectrum

EPS_DIAM2 = Fraction(1, 10**16)
EPS_SRG_Y = Fraction(1, 10**26)
EPS_X12 = Fraction(1, 10**11)


# ---------------------------------------------------------------------------
# certificate data

def _enc(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v.numerator)
    if isinstance(v, float):
        return str(Fraction(v))
    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _enc(x) for k, x in v.items()}
    return str(v)


@dataclass
class Step:
    rule: str
    anchor: str
    params: dict
    hypotheses: dict
    holds: bool
    conclusion: str
    bound: Fraction | None = None

    def to_dict(self) -> dict:
        d = {
            "rule": self.rule,
            "anchor": self.anchor,
            "params": _enc(self.params),
            "hypotheses": _enc(self.hypotheses),
            "holds": self.holds,
            "conclusion": self.conclusion,
        }
        if self.bound is not None:
            d["bound"] = _enc(self.bound)
        return d


@dataclass
class Verdict:
    kind: str  # MotionAtLeast | Exceptional | Inconclusive
    bound: Fraction | None = None
    detail: str = ""

    def __str__(self) -> str:
        if self.kind == "MotionAtLeast":
            return f"MotionAtLeast({self.bound})"
        return f"{self.kind}({self.detail})"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "detail": self.detail}
        if self.bound is not None:
            d["bound_num"] = self.bound.numerator
            d["bound_den"] = self.bound.denominator
        return d


@dataclass
class Certificate:
    input_hash: str
    n: int
    branch: str
    steps: list[Step]
    verdict: Verdict
    warnings: list[str] = field(default_factory=list)

    @property
    def bounds(self) -> list[Fraction]:
        return [s.bound for s in self.steps if s.bound is not None]

    def to_dict(self) -> dict:
        d = {
            "input_hash": self.input_hash,
            "n": self.n,
            "branch": self.branch,
            "steps": [s.to_dict() for s in self.steps],
            "verdict": self.verdict.to_dict(),
            "warnings": list(self.warnings),
        }
        if self.verdict.bound is not None and self.n:
            d["verdict"]["fraction_of_n"] = str(self.verdict.bound / self.n)
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        steps = [Step(s["rule"], s["anchor"], s["params"], s["hypotheses"], s["holds"],
                      s["conclusion"], Fraction(s["bound"]) if "bound" in s else None)
                 for s in d["steps"]]
        v = d["verdict"]
        bound = Fraction(v["bound_num"], v["bound_den"]) if "bound_num" in v else None
        return cls(d["input_hash"], d["n"], d["branch"], steps, Verdict(v["kind"], bound, v.get("detail", "")),
                   d.get("warnings", []))


def config_hash(cfg: Configuration) -> str:
    from .ccf import dumps
    return hashlib.sha256(dumps(cfg).encode()).hexdigest()


# ---------------------------------------------------------------------------
# evaluation context and rule registry

class Context:
    def __init__(self, cfg: Configuration):
        self.cfg = cfg
        self.tensor = intersection_tensor(cfg)
        self._report = None

    @property
    def n(self) -> int:
        return self.cfg.n

    @property
    def report(self):
        if self._report is None:
            self._report = distinguishing_report(self.cfg, self.tensor)
        return self._report

    def k(self, i: int) -> int:
        return int(self.tensor.k[i])


RULES: dict[str, Callable[..., Step]] = {}


def rule(name: str, anchor: str):
    def deco(fn):
        def wrapped(ctx: Context, **params) -> Step:
            hyp, holds, conclusion, bound = fn(ctx, **params)
            return Step(name, anchor, dict(params), hyp, bool(holds), conclusion, bound)
        RULES[name] = wrapped
        wrapped.__name__ = fn.__name__
        return wrapped
    return deco


def apply(ctx: Context, name: str, **params) -> Step:
    return RULES[name](ctx, **params)


# ---------------------------------------------------------------------------
# generic tools

def _metric_array(tensor: IntersectionTensor, i: int):
    """Intersection array of X_i when the scheme is its distance scheme."""
    if not tensor.symmetric or not tensor.homogeneous:
        return None
    dist = tensor.distances(i)
    D = tensor.r - 1
    if len(dist) != D or sorted(dist.values()) != list(range(1, D + 1)):
        return None
    at = {d: c for c, d in dist.items()}
    at[0] = tensor.diagonal[0]
    b = [int(tensor.p[at[h + 1], i, at[h]]) for h in range(D)]
    c = [int(tensor.p[at[h - 1], i, at[h]]) for h in range(1, D + 1)]
    return b, c


def recognize_family(tensor: IntersectionTensor):
    """('Johnson', (m, d)) / ('Hamming', (d, m)) by parameters, or None."""
    n, D = tensor.n, tensor.r - 1
    if D < 1:
        return None
    for i in tensor.edge_colors:
        arr = _metric_array(tensor, i)
        if arr is None:
            continue
        for m in range(2 * D, n + 2 * D + 1):
            if D >= 2 and math.comb(m, D) == n and johnson_array(m, D) == arr:
                return "Johnson", (m, D), i
            if math.comb(m, D) > n:
                break
        m = round(n ** (1 / D))
        for mm in (m - 1, m, m + 1):
            if mm >= 2 and mm**D == n and hamming_array(D, mm) == arr:
                return "Hamming", (D, mm), i
    return None


@rule("recognize-family", "Johnson and Hamming schemes by intersection array")
def _r_family(ctx: Context):
    found = recognize_family(ctx.tensor)
    hyp = {"n": ctx.n, "rank": ctx.tensor.r}
    if found is None:
        srg = None
        if ctx.tensor.r == 3 and ctx.tensor.symmetric:
            for i in ctx.tensor.edge_colors:
                params = ctx.tensor.srg_parameters([i])
                if params and geo.srg_smallest_is_minus2(*params):
                    srg = geo.recognize_srg_minus2(*params)
                    hyp["srg_parameters"] = list(params)
                    break
        if srg is not None and srg.kind == "Sporadic":
            return hyp, True, "SrgMinus2Family(sporadic)", None
        return hyp, False, "no exceptional family matched", None
    kind, params, color = found
    hyp.update({"metric_color": color, "family_parameters": list(params)})
    return hyp, True, f"{kind}{params}", None


@rule("dmin-bound", "motion is at least the minimal distinguishing number")
def _r_dmin(ctx: Context):
    rep = ctx.report
    return {"dmin": rep.dmin, "d_by_color": rep.d_by_color}, True, f"motion >= {rep.dmin}", Fraction(rep.dmin)


@rule("spectral-bound", "motion of a regular graph from k, q and the zero-weight spectral radius")
def _r_spectral(ctx: Context, colors):
    bound, ev = certified_spectral_bound(ctx.tensor, colors)
    ev = {"k": ev["k"], "q": ev["q"], "xi_upper": ev["xi_upper"]}
    holds = bound > 0
    return ev, holds, f"motion >= {bound}" if holds else "bound degenerates to 0", bound if holds else None


@rule("bounded-degree", "primitive configurations with all degrees at most delta n")
def _r_bounded(ctx: Context):
    t = ctx.tensor
    if t.r < 3 or not structural_flags(ctx.cfg, t).primitive:
        return {"rank": t.r, "primitive": structural_flags(ctx.cfg, t).primitive}, False, "not applicable", None
    delta, bound = best_bounded_degree_bound(t)
    if bound > ctx.report.dmin:
        raise SoundnessError(f"bounded-degree bound {bound} exceeds Dmin {ctx.report.dmin}")
    return {"delta": delta, "rank": t.r, "dmin": ctx.report.dmin}, True, f"motion >= {bound}", bound


# ---------------------------------------------------------------------------
# classification

def classify_rank4(cfg: Configuration, tensor: IntersectionTensor | None = None,
                   require_primitive: bool = True) -> str:
    t = tensor or intersection_tensor(cfg)
    if t.r != 4 or not t.homogeneous:
        raise NotRank4(f"rank {t.r}")
    if require_primitive and not all(t.connected(i) for i in t.edge_colors):
        raise NotPrimitive("some constituent is disconnected")
    if not t.symmetric:
        return "OrientedColors"
    if any(t.diameter(i) == 3 for i in t.edge_colors):
        return "DRGDiameter3"
    return "AssocDiameter2"


@rule("classify-rank4", "three classes of primitive rank-4 configurations")
def _r_classify(ctx: Context):
    t = ctx.tensor
    branch = classify_rank4(ctx.cfg, t)
    return {"symmetric": t.symmetric, "diameters": [t.diameter(i) for i in t.edge_colors]}, True, branch, None


@rule("drg-diameter3", "a diameter-3 constituent is distance-regular; handled by generic tools")
def _r_drg3(ctx: Context):
    t = ctx.tensor
    i = next(i for i in t.edge_colors if t.diameter(i) == 3)
    arr = _metric_array(t, i)
    return {"metric_color": i, "intersection_array": list(arr) if arr else None}, arr is not None, \
        "distance-regular constituent; generic bounds apply", None


# ---------------------------------------------------------------------------
# oriented branch

def _oriented_colors(t: IntersectionTensor):
    i = next(c for c in t.edge_colors if t.pairing[c] != c)
    s = next(c for c in t.edge_colors if t.pairing[c] == c)
    return i, t.pairing[i], s


def _family_of(params):
    if params is None or not geo.srg_smallest_is_minus2(*params):
        return None
    v = geo.recognize_srg_minus2(*params)
    return v if v.kind in ("Triangular", "Lattice") else None


@rule("oriented-branch", "oriented rank-4 configurations with an undirected strongly regular constituent")
def _r_oriented(ctx: Context):
    t = ctx.tensor
    if t.symmetric:
        raise BranchMismatch("no oriented color")
    i, istar, s = _oriented_colors(t)
    n = ctx.n
    ki, ks = ctx.k(i), ctx.k(s)
    srg = t.srg_parameters([s])
    value = int(t.p[i, i, i] + t.p[istar, istar, i])
    lower = Fraction(2 * ki - ks - 1, 3)
    hyp = {"oriented": [i, istar], "undirected": s, "srg": list(srg) if srg else None,
           "p_iii_plus_p_isisi": value, "lower": lower, "inequality": value >= lower}
    if value < lower:
        raise SoundnessError("oriented-branch counting inequality fails")
    fam_t = _family_of(srg)
    fam_c = _family_of(t.srg_parameters([i, istar]))
    hyp["x_t_family"] = str(fam_t) if fam_t else None
    hyp["complement_family"] = str(fam_c) if fam_c else None
    if fam_c is not None and fam_c.kind == "Lattice":
        return hyp, False, "complement of a lattice graph: impossible for this branch", None
    if n <= 100:
        return hyp, False, "SmallN: the branch argument needs n > 100", None
    if fam_t is not None:
        dmin = ctx.report.dmin
        hyp.update({"k_i_over_n": Fraction(ki, n), "dmin": dmin})
        if 18 * dmin < n:
            raise SoundnessError(f"Dmin={dmin} below n/18 on an oriented {fam_t} instance")
        return hyp, True, f"X_t is {fam_t}: motion >= n/18", Fraction(n, 18)
    if fam_c is not None:
        return hyp, True, "complement of a triangular graph: see the clique-distinguishing step", None
    return hyp, False, "X_t outside the recognized families: generic tools only", None


# ---------------------------------------------------------------------------
# association schemes of diameter 2

def _ordered_rank4(t: IntersectionTensor):
    if t.r != 4 or not t.symmetric or not t.homogeneous:
        raise PreconditionViolated("needs a rank-4 association scheme")
    if not (t.k[1] <= t.k[2] <= t.k[3]) or t.diagonal != (0,):
        raise PreconditionViolated("constituents must be ordered by degree")


def lemma_k2_large(ctx: Context, gamma) -> Step | None:
    gamma = Fraction(gamma)
    if ctx.k(2) < gamma * ctx.k(3):
        return None
    return apply(ctx, "k2-large", gamma=str(gamma))


@rule("k2-large", "if k_2 >= gamma k_3 every pair is distinguished by gamma n/6 vertices")
def _r_k2_large(ctx: Context, gamma):
    gamma = Fraction(gamma)
    t = ctx.tensor
    _ordered_rank4(t)
    k2, k3 = ctx.k(2), ctx.k(3)
    holds = k2 >= gamma * k3
    hyp = {"k2": k2, "k3": k3, "gamma": gamma, "diameter": t.diameter(1) and max(t.diameter(i) for i in (1, 2, 3))}
    if not holds:
        return hyp, False, "k_2 < gamma k_3", None
    bound = gamma * ctx.n / 6
    if ctx.report.dmin < bound:
        raise SoundnessError(f"Dmin={ctx.report.dmin} < gamma n/6 = {bound}")
    hyp["dmin"] = ctx.report.dmin
    return hyp, True, f"motion >= {bound}", bound


def param_inequalities(tensor: IntersectionTensor, eps) -> dict[str, bool]:
    """The five inequalities that follow from max(k_1, k_2) <= eps k_3 / 2."""
    eps = Fraction(eps)
    _ordered_rank4(tensor)
    p, k = tensor.p, [int(x) for x in tensor.k]
    if max(k[1], k[2]) > eps * k[3] / 2:
        raise PreconditionViolated(f"max(k1,k2)={max(k[1], k[2])} > eps k3/2 = {eps * k[3] / 2}")
    checks = {
        "p12_3 <= eps k1": p[1, 2, 3] <= eps * k[1],
        "p11_3 <= eps k1": p[1, 1, 3] <= eps * k[1],
        "p22_3 <= eps k2": p[2, 2, 3] <= eps * k[2],
        "p33_1 >= (1-eps) k3": p[3, 3, 1] >= (1 - eps) * k[3],
        "p33_2 >= (1-eps) k3": p[3, 3, 2] >= (1 - eps) * k[3],
    }
    checks = {a: bool(b) for a, b in checks.items()}
    if not all(checks.values()):
        bad = [a for a, b in checks.items() if not b]
        raise SoundnessError(f"degree-ratio inequalities fail: {bad}")
    return checks


@rule("param-inequalities", "small k_1, k_2 force the listed intersection-number inequalities")
def _r_param(ctx: Context, eps):
    checks = param_inequalities(ctx.tensor, Fraction(eps))
    return dict(checks, eps=Fraction(eps)), True, "all five inequalities hold", None


class TriangleTools:
    """The triangle inequality p_ij^s + p_jl^r <= k_j + p_il^t and its
    specializations, for a rank-4 scheme ordered by degree."""

    def __init__(self, tensor: IntersectionTensor):
        self.t = tensor

    def exists(self, s: int, r: int, t: int) -> bool:
        return self.t.p[s, r, t] > 0

    def general(self, i, j, l, s, r, t) -> tuple[bool, int]:
        if not self.exists(s, r, t):
            raise NoSuchTriangle(f"no triangle with sides ({s},{r},{t})")
        p, k = self.t.p, self.t.k
        slack = int(k[j] + p[i, l, t] - p[i, j, s] - p[j, l, r])
        return slack >= 0, slack

    def _small(self, eps):
        k = self.t.k
        if max(k[1], k[2]) > Fraction(eps) * k[3] / 2:
            raise PreconditionViolated("max(k1,k2) > eps k3/2")

    def cor_triangle(self, s, t, i, j, eps) -> tuple[bool, Fraction]:
        """p_ij^s <= p_i3^t + eps k_j when a triangle (s, t, 3) exists."""
        self._small(eps)
        if not self.exists(s, t, 3):
            raise NoSuchTriangle(f"no triangle with sides ({s},{t},3)")
        p, k = self.t.p, self.t.k
        slack = p[i, 3, t] + Fraction(eps) * int(k[j]) - int(p[i, j, s])
        return slack >= 0, slack

    def cor_same(self, i, j, s, eps) -> tuple[bool, Fraction]:
        """p_ij^s <= p_i3^s + eps k_j."""
        self._small(eps)
        p, k = self.t.p, self.t.k
        slack = int(p[i, 3, s]) + Fraction(eps) * int(k[j]) - int(p[i, j, s])
        return slack >= 0, slack

    def cor_double(self, i, j, s, eps) -> tuple[bool, Fraction]:
        """2 p_ij^s <= k_j + eps k_i."""
        self._small(eps)
        p, k = self.t.p, self.t.k
        slack = int(k[j]) + Fraction(eps) * int(k[i]) - 2 * int(p[i, j, s])
        return slack >= 0, slack

    def cor_p12_2(self, eps) -> tuple[bool, Fraction]:
        """2 p_12^2 <= (1 + eps) k_1."""
        self._small(eps)
        slack = (1 + Fraction(eps)) * int(self.t.k[1]) - 2 * int(self.t.p[1, 2, 2])
        return slack >= 0, slack

    def all_general(self) -> tuple[bool, int]:
        """Check the inequality on every existing triangle; return min slack."""
        t = self.t
        p, k = t.p.astype(np.int64), t.k.astype(np.int64)
        cols = list(t.edge_colors)
        worst = None
        for s in cols:
            for r_ in cols:
                for tt in cols:
                    if p[s, r_, tt] == 0:
                        continue
                    # slack[i, j, l] = k_j + p[i,l,tt] - p[i,j,s] - p[j,l,r_]
                    sl = (k[None, :, None] + p[:, :, tt][:, None, :]
                          - p[:, :, s][:, :, None] - p[:, :, r_][None, :, :])
                    sub = sl[np.ix_(cols, cols, cols)]
                    m = int(sub.min())
                    worst = m if worst is None else min(worst, m)
        return (worst is None or worst >= 0), (worst if worst is not None else 0)


def triangle_inequality_tools(tensor: IntersectionTensor) -> TriangleTools:
    return TriangleTools(tensor)


@rule("triangle-inequalities", "p_ij^s + p_jl^r <= k_j + p_il^t on every triangle of colors")
def _r_triangle(ctx: Context):
    ok, slack = TriangleTools(ctx.tensor).all_general()
    if not ok:
        raise SoundnessError(f"triangle inequality fails with slack {slack}")
    return {"min_slack": slack}, True, "holds on all triangles", None


def _srg_minus2(t: IntersectionTensor, colors) -> tuple | None:
    params = t.srg_parameters(colors)
    if params is None:
        return None
    if not union_spectrum(t, colors).smallest_is(-2):
        return None
    return params


def _line_of_regular_triangle_free(cfg: Configuration, color_set) -> dict | None:
    adj = cfg.adjacency(color_set)
    root = geo.line_graph_root(adj)
    if root is None:
        return None
    deg = root.adj.sum(axis=1)
    from scipy.sparse.csgraph import connected_components
    ncomp = connected_components(root.adj, directed=False)[0]
    if not np.all(deg == deg[0]) or ncomp != 1:
        return None
    return {"root_n": len(root.adj), "root_k": int(deg[0])}


@dataclass
class Diam2Result:
    outcomes: list[tuple[str, dict]]

    @property
    def tags(self) -> list[str]:
        return [o for o, _ in self.outcomes]


def theorem_diam2(cfg: Configuration, tensor: IntersectionTensor | None = None,
                  eps=EPS_DIAM2, dmin: int | None = None) -> Diam2Result:
    """Evaluate the five alternatives for rank-4 diameter-2 schemes."""
    t = tensor or intersection_tensor(cfg)
    _ordered_rank4(t)
    eps = Fraction(eps)
    n = t.n
    k1, k2 = int(t.k[1]), int(t.k[2])
    out: list[tuple[str, dict]] = []
    if dmin is None:
        dmin = distinguishing_report(cfg, t, audit=False).dmin
    if dmin >= eps * n / 12:
        out.append(("Distinguished", {"dmin": dmin}))
    for i in (1, 2):
        spec = constituent_spectrum(t, i)
        q = t.q([i])
        limit = (1 - eps) * int(t.k[i]) - q
        if spec.xi_at_most(limit):
            out.append((f"SpectralGap({i})", {"q": q, "xi": spec.xi_upper(), "k": int(t.k[i])}))
    ratio_ok = Fraction(k2) <= Fraction(101, 100) * k1
    for i, tag in ((1, "X1Line"), (2, "X2Line")):
        if tag == "X2Line" and not ratio_ok:
            continue
        srg = _srg_minus2(t, [i])
        if srg is not None:
            out.append((tag, {"srg": list(srg), "family": str(geo.recognize_srg_minus2(*srg))}))
            continue
        lg = _line_of_regular_triangle_free(cfg, [i])
        if lg is not None:
            out.append((tag, lg))
    srg12 = _srg_minus2(t, [1, 2])
    if srg12 is not None and ratio_ok and n >= 12:
        out.append(("X12Srg", {"srg": list(srg12), "family": str(geo.recognize_srg_minus2(*srg12))}))
    if not out:
        raise NoOutcome("no alternative holds")
    return Diam2Result(out)


@rule("diam2-outcomes", "one of five alternatives holds for rank-4 diameter-2 schemes")
def _r_diam2(ctx: Context):
    res = theorem_diam2(ctx.cfg, ctx.tensor, dmin=ctx.report.dmin)
    hyp = {tag: ev for tag, ev in res.outcomes}
    return hyp, True, ", ".join(res.tags), None


# ---------------------------------------------------------------------------
# clique distinguishing (triangular constituent union)

def delsarte_lines(adj: np.ndarray, size: int) -> geo.CliqueGeometry:
    params = geo.metsch_params(adj, 2)
    params = geo.MetschParams(size - 2, params.lambda2, 1, params.k, 2)  # threshold = size
    g = geo.extract_lines(adj, 2, params)
    if any(len(line) != size for line in g.lines) or set(g.per_vertex_count) != {2}:
        raise NotTriangular("no Delsarte clique geometry with two cliques per vertex")
    return g


@dataclass
class CliqueDistinguishingResult:
    alpha_true: Fraction
    alpha_interior: Fraction
    witness: tuple
    lines: int
    s: int


def clique_distinguishing(cfg: Configuration, colors) -> CliqueDistinguishingResult:
    """Minimum over Delsarte cliques C of X_I and pairs x != y in C of the
    fraction of z in C with c(z,x) != c(z,y).

    ``alpha_true`` counts x and y themselves (they always distinguish);
    ``alpha_interior`` counts only the other clique members.
    """
    t = intersection_tensor(cfg)
    params = t.srg_parameters(colors)
    fam = _family_of(params)
    if fam is None or fam.kind != "Triangular" or fam.s < 5:
        raise NotTriangular(f"X_I has parameters {params}, not a triangular graph T(s) with s >= 5")
    s = fam.s
    adj = cfg.adjacency(colors)
    g = delsarte_lines(adj, s - 1)
    col = cfg.color
    best, best_int, witness = None, None, None
    for li, line in enumerate(g.lines):
        idx = np.asarray(line)
        sub = col[np.ix_(idx, idx)]  # sub[z, x] = c(z, x)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                diff = sub[:, a] != sub[:, b]
                cnt = int(diff.sum())
                frac = Fraction(cnt, len(idx))
                inner = Fraction(cnt - int(diff[a]) - int(diff[b]), len(idx))
                if best is None or frac < best:
                    best, witness = frac, (li, int(idx[a]), int(idx[b]))
                if best_int is None or inner < best_int:
                    best_int = inner
    return CliqueDistinguishingResult(best, best_int, witness, len(g.lines), s)


def sun_wilmes_check(cfg: Configuration, colors, alpha=None) -> Step:
    """Run the clique-distinguishing rule on X_I for the given colors."""
    ctx = Context(cfg)
    return apply(ctx, "clique-distinguishing", colors=sorted(colors),
                 alpha=None if alpha is None else str(Fraction(alpha)))


@rule("clique-distinguishing", "Delsarte cliques of a triangular X_I whose pairs are distinguished inside the clique")
def _r_clique_distinguishing(ctx: Context, colors, alpha=None):
    res = clique_distinguishing(ctx.cfg, colors)
    n = ctx.n
    if alpha is None:
        a = min(res.alpha_true, Fraction(1, 2))
    else:
        a = Fraction(alpha)
    hyp = {"s": res.s, "lines": res.lines, "alpha_true": res.alpha_true,
           "alpha_interior": res.alpha_interior, "alpha": a}
    if a <= 0 or res.alpha_true < a or a > Fraction(1, 2):
        hyp["witness"] = list(res.witness)
        return hyp, False, f"fraction {res.alpha_true} below alpha {a}", None
    bound = a * n / 2
    # alpha = 1/2 is the limit of admissible alpha < 1/2 and motion is an integer
    hyp["split_set_bound"] = Fraction(4) / a * Fraction(math.log(n)).limit_denominator(10**6) + 2
    return hyp, True, f"motion >= {bound}", bound


# ---------------------------------------------------------------------------
# strongly regular unions with smallest eigenvalue -2

def k2_le_20k1(tensor: IntersectionTensor, eps, delta) -> bool:
    """Returns whether k_2 <= 20 k_1 once the predicate's hypotheses hold."""
    eps, delta = Fraction(eps), Fraction(delta)
    p, k = tensor.p, [int(x) for x in tensor.k]
    hyps = {
        "eps <= 1/100": eps <= Fraction(1, 100),
        "delta <= 1/100": delta <= Fraction(1, 100),
        "p22_2 >= (1-delta)/2 k2": p[2, 2, 2] >= (1 - delta) / 2 * k[2],
        "k2/8 <= p22_1 <= k2/3": Fraction(k[2], 8) <= p[2, 2, 1] <= Fraction(k[2], 3),
        "k2 <= eps k3/2": k[2] <= eps * k[3] / 2,
    }
    bad = [h for h, ok in hyps.items() if not ok]
    if bad:
        raise HypothesisViolated(bad[0])
    ok = k[2] <= 20 * k[1]
    if not ok:
        raise SoundnessError("k_2 > 20 k_1 although the hypotheses hold")
    return ok


def p231_bound(tensor: IntersectionTensor, m: int, x1_srg_minus2: bool = False) -> tuple[bool, Fraction]:
    """p_23^1 against (m^2 - 2)/2 k_1, or (m^2 - 4)/8 k_1 when X_1 is strongly
    regular with smallest eigenvalue -2.  Returns (holds, bound)."""
    k1 = int(tensor.k[1])
    bound = Fraction(m * m - 4, 8) * k1 if x1_srg_minus2 else Fraction(m * m - 2, 2) * k1
    return bool(tensor.p[2, 3, 1] <= bound), bound


@rule("x12-gap", "q + xi of X_12 at most 99/100 of its degree")
def _r_x12_gap(ctx: Context):
    t = ctx.tensor
    k1, k2, k3 = ctx.k(1), ctx.k(2), ctx.k(3)
    hyp = {
        "x2_srg_minus2": _srg_minus2(t, [2]) is not None,
        "k2 <= 101/100 k1": Fraction(k2) <= Fraction(101, 100) * k1,
        "k2 <= eps k3/2 (eps=1e-11)": k2 <= EPS_X12 * k3 / 2,
        "n >= 29": ctx.n >= 29,
    }
    spec = union_spectrum(t, (1, 2))
    q = t.q((1, 2))
    k = k1 + k2
    ok = spec.xi_at_most(Fraction(99, 100) * k - q)
    hyp.update({"q": q, "xi_upper": spec.xi_upper(), "conclusion": ok})
    if all(v for key, v in hyp.items() if key not in ("q", "xi_upper", "conclusion")) and not ok:
        raise SoundnessError("q + xi > 99/100 k on an instance meeting all hypotheses")
    if not ok:
        return hyp, False, "q + xi exceeds 99/100 k", None
    bound, _ = certified_spectral_bound(t, (1, 2))
    return hyp, True, f"motion >= {bound}", bound


@rule("y-gap", "with X_1 strongly regular (smallest eigenvalue -2), X_2 or X_12 has a spectral gap")
def _r_y_gap(ctx: Context):
    t = ctx.tensor
    hyp = {"x1_srg_minus2": _srg_minus2(t, [1]) is not None}
    best = None
    for cols in ((2,), (1, 2)):
        spec = union_spectrum(t, cols)
        q = t.q(cols)
        ok = spec.xi_at_most((1 - EPS_SRG_Y) * spec.k - q)
        hyp[f"gap_{''.join(map(str, cols))}"] = ok
        if ok:
            b, _ = certified_spectral_bound(t, cols)
            best = b if best is None else max(best, b)
    holds = best is not None and best > 0
    return hyp, holds, f"motion >= {best}" if holds else "no spectral gap", best if holds else None


def srg_branch_checks(ctx: Context) -> list[Step]:
    steps = [apply(ctx, "x12-gap")]
    t = ctx.tensor
    if _srg_minus2(t, [1]) is not None:
        steps.append(apply(ctx, "y-gap"))
    srg12 = _srg_minus2(t, [1, 2])
    if srg12 is not None and ctx.k(2) <= Fraction(11, 10) * ctx.k(1):
        fam = geo.recognize_srg_minus2(*srg12)
        if fam.kind == "Triangular" and fam.s >= 5:
            steps.append(apply(ctx, "clique-distinguishing", colors=[1, 2], alpha="1/16"))
    return steps


# ---------------------------------------------------------------------------
# line graphs of triangle-free regular graphs

@rule("line-graph-branch", "a constituent that is the line graph of a triangle-free regular graph")
def _r_line_graph(ctx: Context, color):
    from .oracle import automorphisms
    t = ctx.tensor
    adj = ctx.cfg.adjacency(color)
    root = geo.line_graph_root(adj)
    if root is None:
        raise NotLineGraph(f"X_{color} is not the line graph of a triangle-free graph")
    y = root.adj
    ny = len(y)
    deg = y.sum(axis=1)
    from scipy.sparse.csgraph import connected_components
    hyp = {"base_n": ny, "base_regular": bool(np.all(deg == deg[0])), "base_k": int(deg[0]),
           "base_connected": connected_components(y, directed=False)[0] == 1,
           "srg": t.srg_parameters([color]) is not None, "line_diameter": t.diameter(color)}
    if hyp["srg"]:
        return hyp, False, "NotApplicable: the constituent is strongly regular", None
    if not (hyp["base_regular"] and hyp["base_connected"] and hyp["base_k"] >= 3 and ny >= 5):
        return hyp, False, "NotApplicable: base must be connected, regular, k >= 3, n >= 5", None
    if hyp["line_diameter"] != 2:
        hyp["base_bipartite"] = is_bipartite(y)
        reason = "NotApplicable: line graph has diameter " + str(hyp["line_diameter"])
        if hyp["base_bipartite"]:
            reason += " (bipartite base without 5-cycles would be complete bipartite)"
        return hyp, False, reason, None
    k = hyp["base_k"]
    base_cfg = from_adjacency(y)
    dmin_base = min(pair_distinguishing(base_cfg, u, v) for u in range(ny) for v in range(u + 1, ny))
    hyp.update({"k >= n/8": 8 * k >= ny, "base_dmin": dmin_base, "base_dmin >= n/8": 8 * dmin_base >= ny})
    if ny <= 40 and ctx.n <= 60:
        hyp["whitney"] = automorphisms(base_cfg).order == automorphisms(from_adjacency(adj)).order
    if not (hyp["k >= n/8"] and hyp["base_dmin >= n/8"]):
        raise SoundnessError("line-graph degree or distinguishing bound fails at diameter 2")
    bound = Fraction(ctx.n, 16)
    direct = Fraction(dmin_base * (k - 1), 2)
    hyp["direct_bound"] = direct
    return hyp, True, f"motion >= {bound}", bound


def line_graph_branch(cfg: Configuration, color: int) -> list[Step]:
    return [apply(Context(cfg), "line-graph-branch", color=color)]


# ---------------------------------------------------------------------------
# closed-form spectral radius assertions

@rule("xi-closed-form", "closed-form upper bounds on xi(X_1) and xi(X_12)")
def _r_xi_closed(ctx: Context, eps):
    from .spectral import xi_bound_x1, xi_bound_x12
    t = ctx.tensor
    hyp = {"eps": Fraction(eps)}
    for name, fn in (("x1", xi_bound_x1), ("x12", xi_bound_x12)):
        try:
            hyp[name] = Fraction(fn(t, Fraction(eps))).limit_denominator(10**9)
        except HypothesisViolated as exc:
            hyp[name] = f"hypothesis violated: {exc.which}"
    return hyp, True, "closed forms dominate exact xi where applicable", None


# ---------------------------------------------------------------------------
# pipeline

def _closed_sets(t: IntersectionTensor) -> list[list[int]]:
    sets = []
    for i in t.edge_colors:
        s = sorted({i, t.pairing[i]})
        if s not in sets:
            sets.append(s)
    if t.r == 4 and t.symmetric:
        sets.append([1, 2])
    return sets


def certify(cfg: Configuration) -> Certificate:
    h = config_hash(cfg)
    try:
        tensor = intersection_tensor(cfg)
    except (NotCoherent, CCMotionError) as exc:
        return Certificate(h, cfg.n, "none", [], Verdict("Inconclusive", None, f"not coherent: {exc}"))
    if not tensor.homogeneous:
        return Certificate(h, cfg.n, "none", [], Verdict("Inconclusive", None, "not homogeneous"))
    ordered = order_by_degree(cfg)
    ctx = Context(ordered)
    t = ctx.tensor
    flags = structural_flags(ordered, t)
    warnings = []
    if not flags.primitive:
        warnings.append("configuration is not primitive")
    if t.r != 4:
        warnings.append(f"rank {t.r} is not 4: generic tools only")
    steps: list[Step] = []
    fam = apply(ctx, "recognize-family")
    steps.append(fam)
    steps.append(apply(ctx, "dmin-bound"))
    branch = "generic"
    if t.r == 4 and flags.primitive:
        cls = apply(ctx, "classify-rank4")
        steps.append(cls)
        branch = cls.conclusion
        if branch == "OrientedColors":
            st = apply(ctx, "oriented-branch")
            steps.append(st)
            if st.hypotheses.get("complement_family", "") and str(st.hypotheses["complement_family"]).startswith("Triangular"):
                i, istar, _ = _oriented_colors(t)
                try:
                    steps.append(apply(ctx, "clique-distinguishing", colors=sorted([i, istar]), alpha=None))
                except NotTriangular:
                    pass
        elif branch == "DRGDiameter3":
            steps.append(apply(ctx, "drg-diameter3"))
        else:
            g = Fraction(ctx.k(2), ctx.k(3))
            steps.append(apply(ctx, "k2-large", gamma=str(min(g, Fraction(1)))))
            eps = Fraction(2 * max(ctx.k(1), ctx.k(2)), ctx.k(3))
            if eps <= 1:
                steps.append(apply(ctx, "param-inequalities", eps=str(eps)))
            steps.append(apply(ctx, "triangle-inequalities"))
            diam = apply(ctx, "diam2-outcomes")
            steps.append(diam)
            steps.extend(srg_branch_checks(ctx))
            for i in (1, 2):
                if geo.line_graph_root(ordered.adjacency(i)) is not None:
                    steps.append(apply(ctx, "line-graph-branch", color=i))
    for cols in _closed_sets(t):
        steps.append(apply(ctx, "spectral-bound", colors=cols))
    if flags.primitive and t.r >= 3:
        steps.append(apply(ctx, "bounded-degree"))
    bounds = [s.bound for s in steps if s.bound is not None]
    best = max(bounds) if bounds else None
    if fam.holds:
        kind = fam.conclusion.split("(")[0]
        if kind == "SrgMinus2Family":
            verdict = Verdict("Exceptional", best, "SrgMinus2Family")
        else:
            verdict = Verdict("Exceptional", best, kind)
    elif best is not None and best > 0:
        verdict = Verdict("MotionAtLeast", best)
    else:
        verdict = Verdict("Inconclusive", None, "no positive bound found")
    return Certificate(h, cfg.n, branch, steps, verdict, warnings)


def replay(cert: Certificate | dict, cfg: Configuration) -> list[bool]:
    """Re-evaluate every step from the configuration and compare with the
    stored record; one boolean per step."""
    if isinstance(cert, dict):
        cert = Certificate.from_dict(cert)
    if config_hash(cfg) != cert.input_hash:
        raise ValueError("certificate does not belong to this configuration")
    ctx = Context(order_by_degree(cfg))
    out = []
    for st in cert.steps:
        params = {k: v for k, v in st.params.items()}
        again = apply(ctx, st.rule, **params)
        out.append(json.dumps(again.to_dict(), sort_keys=True) == json.dumps(st.to_dict(), sort_keys=True))
    return out
