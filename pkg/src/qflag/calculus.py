"""First-order calculi on the quantum flag manifolds: tangent operators,
the exterior derivative, truncated holomorphic sections, and the quotient
(generators-and-relations) route used to cross-validate the tangent route.

The (0,1) side uses quantum root vectors E_beta for the positive roots with
nonzero crossed-node coefficient; the (1,0) side uses the F_beta for their
negatives.  A truncated line-module element is holomorphic when every tangent
operator kills its vector slot; since the operators act on the vector slot
only and blocks are independent, kernels are computed per weight block.

The quotient route realizes forms as spans of formal symbols u . d(zbar_l) . v
with word coefficients, modulo the Leibniz images of every relation that the
realized algebra satisfies at the truncation (this includes the quadratic,
mixed, and c = 1 relations automatically, since they span the realization
kernel).  Formal d kills the z generators.  The bracket operator from the
R-matrix presentation of the relation module is assembled verbatim and
reported with its blockwise eigenvalues; kernel agreement between the two
routes is the acceptance arbiter.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cartan
from .cartan import FlagSpec
from .errors import DomainError, TruncationError
from .linalg import SpanBasis, SparseMatrix, dv_add_scaled, nullspace
from .peterweyl import PWAlgebra, PWElement
from .rmatrix import Braiding, braiding


@dataclass(frozen=True)
class H0Result:
    flag: FlagSpec
    k: int
    depth: int
    chirality: str
    blocks: tuple          # ((lam, (kernel col dict-vec, ...)), ...)
    dims: tuple            # dim V_lam per block
    word: tuple

    @property
    def dim(self) -> int:
        return sum(d * len(cols) for (_, cols), d in zip(self.blocks, self.dims))

    def block_weights(self):
        return tuple(lam for lam, _ in self.blocks)


class Calculus:
    """Tangent-space data of the two Heckenberger-Kolb chiralities."""

    def __init__(self, algebra: PWAlgebra, flag: FlagSpec, word=None):
        if flag.lie != algebra.lie:
            raise DomainError("flag is over a different type")
        self.algebra = algebra
        self.flag = flag
        self.word = tuple(word) if word is not None else \
            cartan.longest_word(algebra.lie)
        if not cartan.is_reduced_for_w0(algebra.lie, self.word):
            raise DomainError("word is not reduced for the longest element")
        seq = cartan.root_sequence(algebra.lie, self.word)
        x = flag.crossed
        self.positions = tuple((r + 1, beta) for r, beta in enumerate(seq)
                               if beta[x - 1] != 0)
        self._tangent = {}

    def restricted_roots(self, sign: str = "+"):
        if sign == "+":
            return tuple(beta for _, beta in self.positions)
        return tuple(tuple(-c for c in beta) for _, beta in self.positions)

    def tangent_operators(self, lam, chirality: str = "01"):
        """Root-vector operator matrices on V_lam for one chirality."""
        key = (tuple(lam), chirality)
        ops = self._tangent.get(key)
        if ops is None:
            kind = "E" if chirality == "01" else "F"
            lops = self.algebra.ops(lam)
            ops = tuple(lops.root_operator(self.word, r, kind)
                        for r, _ in self.positions)
            self._tangent[key] = ops
        return ops

    # -- exterior derivatives -------------------------------------------------

    def dbar(self, a: PWElement, chirality: str = "01") -> dict:
        """Sum of (E_beta acting on the vector slot) (x) e_beta, as a map
        {((lam, row, col), root position): scalar}."""
        alg = self.algebra
        out = {}
        for pos in range(len(self.positions)):
            img = alg.act_v(lambda lam, p=pos, ch=chirality:
                            self.tangent_operators(lam, ch)[p], a)
            for key, v in img.coeffs.items():
                out[(key, pos)] = v
        return out

    def del_(self, a: PWElement) -> dict:
        return self.dbar(a, chirality="10")

    # -- holomorphic sections ---------------------------------------------------

    def h0(self, k: int, depth: int, chirality: str = "01") -> H0Result:
        """Exact kernel of the tangent operators on the truncated slice."""
        alg = self.algebra
        sl = alg.graded_component(self.flag, k, depth)
        blocks = []
        dims = []
        for (lam, cols), d in zip(sl.blocks, sl.dims):
            ops = self.tangent_operators(lam, chirality)
            images = [[op.matvec(col) for op in ops] for col in cols]
            rows = []
            targets = [
                sorted({r for im in images for r in im[p]})
                for p in range(len(ops))
            ]
            zero = alg.ctx.zero
            for p, targ in enumerate(targets):
                for r in targ:
                    rows.append([images[b][p].get(r, zero)
                                 for b in range(len(cols))])
            if rows:
                kernel = nullspace(rows, len(cols), alg.ctx.one)
            else:
                kernel = [tuple(alg.ctx.one if t == b else zero
                                for t in range(len(cols)))
                          for b in range(len(cols))]
            kcols = []
            for vec in kernel:
                acc = {}
                for b, c in enumerate(vec):
                    if c:
                        dv_add_scaled(acc, cols[b], c)
                kcols.append(acc)
            if kcols:
                blocks.append((lam, tuple(kcols)))
                dims.append(d)
        return H0Result(flag=self.flag, k=k, depth=depth, chirality=chirality,
                        blocks=tuple(blocks), dims=tuple(dims), word=self.word)

    def h0_contains(self, res: H0Result, elem: PWElement) -> bool:
        """Exact membership of a PW element in the kernel span."""
        by_block = {}
        for (lam, r, c), v in elem.coeffs.items():
            by_block.setdefault((lam, r), {})[c] = v
        spans = {}
        for (lam, _), colvec in by_block.items():
            sp = spans.get(lam)
            if sp is None:
                sp = SpanBasis()
                for blam, cols in res.blocks:
                    if blam == lam:
                        for col in cols:
                            sp.insert(col)
                spans[lam] = sp
            if not sp.contains(colvec):
                return False
        return True

    def liouville_check(self, depth: int) -> dict:
        """Kernel of dbar on the truncated flag algebra is exactly C.1."""
        res = self.h0(0, depth)
        contains_one = self.h0_contains(res, self.algebra.one())
        report = {
            "kind": "liouville",
            "flag": str(self.flag),
            "depth": depth,
            "dim": res.dim,
            "contains_unit": contains_one,
            "word": list(self.word),
            "ok": res.dim == 1 and contains_one,
        }
        return report


def act_f_orbit_rows(algebra: PWAlgebra, lam, row_vec: dict) -> SpanBasis:
    """Closure of a functional-slot row vector under the right action."""
    m = algebra.module(lam)
    span = SpanBasis()
    span.insert(row_vec)
    frontier = [row_vec]
    gens = [m.e_mats[i] for i in range(m.lie.rank)] + \
           [m.f_mats[i] for i in range(m.lie.rank)]
    while frontier:
        new = []
        for vec in frontier:
            for g in gens:
                img = g.vecmat(vec)
                if img and span.insert(img):
                    new.append(img)
        frontier = new
    return span


def z_power(algebra: PWAlgebra, flag: FlagSpec, k: int) -> PWElement:
    """The k-th power of the distinguished highest generator z."""
    gens = algebra.generators(flag)
    hw = algebra.module(gens.lam).highest_index
    z = gens.z[hw]
    return algebra.multiply_all([z] * k) if k else algebra.one()


def zbar_power(algebra: PWAlgebra, flag: FlagSpec, k: int) -> PWElement:
    gens = algebra.generators(flag)
    hw = algebra.module(gens.lam).highest_index
    zb = gens.zbar[hw]
    return algebra.multiply_all([zb] * k) if k else algebra.one()


# -- quotient-route calculus (generators and relations) -----------------------


def gamma_relation_operator(algebra: PWAlgebra, flag: FlagSpec,
                            br: Braiding | None = None) -> dict:
    """Assemble the quadratic bracket in the braiding on V (x) V verbatim.

    Returns the operator together with its rank and its scalar on each
    Clebsch-Gordan block (the operator is a polynomial in the braiding, so it
    acts blockwise).  Reported, not asserted: see the ledger note on the
    corrupted source display.
    """
    lie, ctx = algebra.lie, algebra.ctx
    x = flag.crossed
    lam = tuple(1 if t == x - 1 else 0 for t in range(lie.rank))
    v = algebra.module(lam)
    if br is None:
        br = braiding(v, v)
    r = br.matrix
    ww = cartan.bilinear(lie, lam, lam)
    axax = 2 * cartan.symmetrizers(lie)[x - 1]
    c1 = ctx.q_power(ww) * (ctx.q_power(axax) - ctx.one)
    c0 = ctx.q_power(2 * ww - axax)
    n2 = v.dim * v.dim
    op = r.mul(r).add(r.scale(c1)).add(SparseMatrix.identity(n2, ctx.one).scale(c0))
    dense = [[op.entry(i, j) or ctx.zero for j in range(n2)] for i in range(n2)]
    from .linalg import rank as _rank
    rk = _rank(dense, n2)
    cg = algebra.cg(lam, lam)
    blocks = []
    for s in cg.summands:
        col0 = {rr: val for (rr, cc), val in s.emb.data.items() if cc == 0}
        img = op.matvec(col0)
        pivot = min(col0)
        scalar = img.get(pivot, ctx.zero) / col0[pivot]
        check = dict(img)
        dv_add_scaled(check, col0, -scalar)
        blocks.append({
            "nu": list(s.nu),
            "eigenvalue": str(scalar),
            "scalar_block": not check,
            "annihilated": not img,
        })
    return {
        "kind": "gamma_relation_operator",
        "flag": str(flag),
        "size": n2,
        "rank": rk,
        "blocks": blocks,
        "operator": op,
    }


def _formal_dbar(word):
    """Leibniz expansion with d(z) = 0: word -> {(prefix, l, suffix): 1}."""
    out = {}
    for t, (kind, idx) in enumerate(word):
        if kind == "zb":
            key = (word[:t], idx, word[t + 1:])
            out[key] = out.get(key, 0) + 1
    return out


def gamma_crosscheck(algebra: PWAlgebra, flag: FlagSpec, trunc: int = 2,
                     ks=(-1, 0, 1)) -> dict:
    """Compare quotient-route and tangent-route kernels on graded slices.

    Both kernels are computed inside the realized span of words of length at
    most ``trunc`` in the generators.  The quotient route's relation module is
    the Leibniz image of the full realization kernel (all algebra relations
    at this truncation); disagreement is reported loudly.
    """
    gens = algebra.generators(flag)
    calc = Calculus(algebra, flag)
    n = len(gens.z)
    ctx = algebra.ctx

    def words_up_to(maxlen):
        out = [()]
        frontier = [()]
        for _ in range(maxlen):
            nxt = []
            for w in frontier:
                for kind in ("z", "zb"):
                    for i in range(n):
                        nxt.append(w + ((kind, i),))
            out.extend(nxt)
            frontier = nxt
        return out

    def realize(word) -> PWElement:
        elems = [gens.z[i] if kind == "z" else gens.zbar[i]
                 for kind, i in word]
        return algebra.multiply_all(elems)

    all_words = words_up_to(trunc)
    degree = {w: sum(1 if kind == "z" else -1 for kind, _ in w)
              for w in all_words}
    realized = {w: realize(w) for w in all_words}
    report = {"kind": "gamma_crosscheck", "flag": str(flag), "trunc": trunc,
              "slices": [], "ok": True}
    for k in ks:
        words = [w for w in all_words if degree[w] == k]
        if not words:
            continue
        # realization kernel on this slice
        coords = sorted({key for w in words for key in realized[w].coeffs})
        rows = [[realized[w].coeffs.get(key, ctx.zero) for w in words]
                for key in coords]
        rel_kernel = nullspace(rows, len(words), ctx.one) if rows else []
        # formal one-form images
        formal = {w: _formal_dbar(w) for w in words}
        symbols = sorted({sym for fm in formal.values() for sym in fm})
        symidx = {s: t for t, s in enumerate(symbols)}
        # relation submodule: Leibniz images of the realization kernel,
        # assembled from the formal images of ALL words (not only this slice's)
        nwords = {w: _formal_dbar(w) for w in all_words}
        nsyms = sorted({sym for fm in nwords.values() for sym in fm})
        nsymidx = {s: t for t, s in enumerate(nsyms)}
        relation_vectors = []
        for vec in rel_kernel:
            acc = {}
            for t, cw in enumerate(vec):
                if cw:
                    for sym, mult in formal[words[t]].items():
                        key = nsymidx[sym]
                        acc[key] = acc.get(key, ctx.zero) + cw * mult
            relation_vectors.append({k2: v for k2, v in acc.items() if v})
        # kernel of the quotient-route dbar: coefficient vectors c with
        # sum_w c_w dbar(w) in span(relations)
        nun = len(words)
        nrel = len(relation_vectors)
        sym_rows = {}
        for t, w in enumerate(words):
            for sym, mult in formal[w].items():
                sym_rows.setdefault(nsymidx[sym], {})[t] = \
                    sym_rows.get(nsymidx[sym], {}).get(t, ctx.zero) + mult
        eq_rows = []
        for symkey in sorted(set(sym_rows) |
                             {kk for rv in relation_vectors for kk in rv}):
            row = [ctx.zero] * (nun + nrel)
            for t, cf in sym_rows.get(symkey, {}).items():
                row[t] = row[t] + cf * ctx.one
            for g, rv in enumerate(relation_vectors):
                cf = rv.get(symkey)
                if cf:
                    row[nun + g] = row[nun + g] - cf
            eq_rows.append(row)
        if eq_rows:
            combined = nullspace(eq_rows, nun + nrel, ctx.one)
        else:
            combined = [tuple(ctx.one if a == b else ctx.zero
                              for a in range(nun + nrel))
                        for b in range(nun)]
        quotient_kernel = SpanBasis()
        for vec in combined:
            acc = {}
            for t in range(nun):
                if vec[t]:
                    dv_add_scaled(acc, realized[words[t]].coeffs, vec[t])
            if acc:
                quotient_kernel.insert(acc)
        # tangent-route kernel on the same realized span
        tangent_kernel = SpanBasis()
        timg = {w: calc.dbar(realized[w]) for w in words}
        tcoords = sorted({key for im in timg.values() for key in im})
        trows = [[timg[w].get(key, ctx.zero) for w in words] for key in tcoords]
        tk = nullspace(trows, len(words), ctx.one) if trows else \
            [tuple(ctx.one if a == b else ctx.zero for a in range(len(words)))
             for b in range(len(words))]
        for vec in tk:
            acc = {}
            for t, cw in enumerate(vec):
                if cw:
                    dv_add_scaled(acc, realized[words[t]].coeffs, cw)
            if acc:
                tangent_kernel.insert(acc)
        agree = quotient_kernel.equals(tangent_kernel)
        report["slices"].append({
            "k": k,
            "words": len(words),
            "relations": nrel,
            "quotient_dim": quotient_kernel.dim,
            "tangent_dim": tangent_kernel.dim,
            "agree": agree,
        })
        if not agree:
            report["ok"] = False
    if not report["ok"]:
        raise TruncationError(
            "quotient-route and tangent-route kernels disagree: " +
            repr(report["slices"]))
    return report
