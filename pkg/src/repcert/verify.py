"""Relator checks and kernel-on-ball certificates."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .grouppres import ball_tree, normal_form
from .repbuild import Representation


@dataclass
class Certificate:
    kind: str
    verdict: bool
    witness: str | None = None
    stats: dict = field(default_factory=dict)

    def to_json(self, timing=True):
        stats = dict(self.stats)
        if not timing:
            stats.pop("wall_time", None)
        return {"kind": self.kind, "verdict": "pass" if self.verdict else "fail",
                "witness": self.witness, "stats": stats}


def hom_check(rep: Representation) -> Certificate:
    """Every relator of the presentation maps to the identity."""
    t0 = time.perf_counter()
    p = rep.presentation
    ident = rep.identity()
    rels = p.relators()
    for r in rels:
        if rep.evaluate(r) != ident:
            return Certificate("hom_check", False, p.word_text(r),
                               {"relators": len(rels), "wall_time": time.perf_counter() - t0})
    return Certificate("hom_check", True, None,
                       {"relators": len(rels), "wall_time": time.perf_counter() - t0})


def _scan_chunk(args):
    rep, words = args
    for k, w in enumerate(words):
        if rep.evaluate(w).is_identity():
            return k
    return None


def ball_kernel(rep: Representation, L: int, jobs: int = 1, cap=None) -> Certificate:
    """No nontrivial element of word length <= L maps to the identity.

    The scan order is the BFS order of the ball, so the witness (the first
    failing element) does not depend on ``jobs``.
    """
    t0 = time.perf_counter()
    p = rep.presentation
    if jobs <= 1:
        size = 0
        for w, m in rep.ball_images(L, cap):
            size += 1
            if w and m.is_identity():
                return Certificate("ball_kernel", False, p.word_text(w),
                                   {"L": L, "scanned": size, "wall_time": time.perf_counter() - t0})
        return Certificate("ball_kernel", True, None,
                           {"L": L, "ball_size": size, "wall_time": time.perf_counter() - t0})

    from concurrent.futures import ProcessPoolExecutor
    words = [w for w, _, _ in ball_tree(p, L, cap)][1:]
    nchunks = jobs * 4
    step = max(1, -(-len(words) // nchunks))
    chunks = [words[i:i + step] for i in range(0, len(words), step)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        results = list(ex.map(_scan_chunk, [(rep, c) for c in chunks]))
    for ci, k in enumerate(results):
        if k is not None:
            w = chunks[ci][k]
            return Certificate("ball_kernel", False, p.word_text(w),
                               {"L": L, "scanned": ci * step + k + 2,
                                "wall_time": time.perf_counter() - t0})
    return Certificate("ball_kernel", True, None,
                       {"L": L, "ball_size": len(words) + 1, "wall_time": time.perf_counter() - t0})


def recheck_witness(rep: Representation, cert: Certificate) -> bool:
    """Re-evaluate a negative certificate's witness; True if it still fails."""
    if cert.verdict or cert.witness is None:
        return False
    p = rep.presentation
    w = p.parse_word(cert.witness)
    if cert.kind == "hom_check":
        return rep.evaluate(w) != rep.identity()
    if p.has_normal_form() and not normal_form(p, w):
        return False
    return rep.evaluate(w).is_identity()
