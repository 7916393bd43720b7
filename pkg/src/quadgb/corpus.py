"""Random conforming algebras and batch witness runs."""

from collections import Counter

from . import linalg
from .algebra import build_quotient, rank_zero_forms
from .fields import make_field, make_rng
from .groebner import IdealPresentation, buchberger
from .poly import PolyRing, monomials_of_degree
from .witness import VerificationFailed, WitnessConfig, WitnessError, find_witness


def random_presentation(n, K, rng, max_tries=200):
    """dim S_2 - 3 random quadrics in n variables with R Artinian and no rank-0 forms."""
    if n < 4:
        raise ValueError("corpus algebras need at least 4 variables")
    names = [f"x{i}" for i in range(1, n + 1)]
    ring = PolyRing(K, names)
    mons = monomials_of_degree(n, 2)
    m = len(mons) - 3
    for _ in range(max_tries):
        rows = [[K.random(rng) for _ in mons] for _ in range(m)]
        if linalg.rank(rows, K) < m:
            continue
        gens = [ring.from_terms(list(zip(row, mons))) for row in rows]
        I = IdealPresentation(ring, gens)
        if buchberger(I).krull_dimension() > 0:
            continue
        R = build_quotient(I, 4)
        if rank_zero_forms(R):
            continue
        return I, R
    raise RuntimeError("rejection sampling did not produce a conforming algebra")


def _run_one(args):
    n, p, seed, index = args
    K = make_field(p)
    rng = make_rng(seed * 100003 + n * 1009 + index)
    I, R = random_presentation(n, K, rng)
    item = {"index": index, "n": n}
    try:
        out = find_witness(R, WitnessConfig(seed=seed))
    except VerificationFailed as exc:
        item.update(status="verification_failed", reason=str(exc))
        return item
    except WitnessError as exc:
        item.update(status="error", reason=f"{exc.code}: {exc}")
        return item
    item["status"] = out.kind
    if out.kind == "witness":
        item.update(path=out.trace.path, max_degree=out.verification["max_degree"],
                    hilbert_3=out.verification["hilbert_3"], extension=out.extension)
    elif out.kind == "inconclusive":
        item["reason"] = out.reason
    return item


def run_corpus(n, count, seed=1, p=101, workers=None):
    """Generate ``count`` algebras in n variables and try the witness pipeline on each."""
    make_field(p)   # validates p
    jobs = [(n, p, seed, i) for i in range(count)]
    if workers and workers > 1 and count > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            items = list(ex.map(_run_one, jobs))
    else:
        items = [_run_one(j) for j in jobs]
    items.sort(key=lambda it: it["index"])
    stats = Counter(it["status"] for it in items)
    paths = Counter(" > ".join(it["path"]) for it in items if it["status"] == "witness")
    return {
        "n": n, "count": count, "seed": seed, "p": p,
        "witness": stats.get("witness", 0),
        "inconclusive": stats.get("inconclusive", 0),
        "verification_failed": stats.get("verification_failed", 0),
        "errors": stats.get("error", 0),
        "paths": dict(sorted(paths.items())),
        "items": items,
    }
