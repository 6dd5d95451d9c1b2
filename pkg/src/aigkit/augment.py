"""Seeded per-node optimization sampling and batch dataset generation.

Walks the initial topological snapshot of the network; at each surviving AND
node it collects the applicable transforms (rewrite / refactor / resub,
honoring the zero-cost flags), draws one uniformly with SplitMix64, applies
it, and logs the decision.  Batch generation repeats this across seeds,
verifies every sample against the original, and emits edgelists plus labels.
"""

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Optional

from .aig import Aig
from .cec import CecLimits, cec
from .errors import EquivalenceFailure
from .lutmap import klut_map
from .passes import check_for_code
from .rng import SplitMix64
from .transforms import CODE_REFACTOR, CODE_RESUB, CODE_REWRITE, PassContext, apply_candidate


@dataclass
class AugConfig:
    seed: int = 0
    zero_rw: bool = False
    zero_rf: bool = False
    log_path: Optional[str] = None


@dataclass
class DecisionRecord:
    node: int
    available: tuple  # always contains 0
    selected: int
    gain: int


@dataclass
class DecisionLog:
    records: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)


def aig_augment(aig: Aig, cfg: AugConfig) -> tuple[Aig, DecisionLog]:
    """One full sampling pass; the result is equivalent to the input and,
    with the zero flags off, never larger."""
    g = aig.clone()
    g.cleanup()
    rng = SplitMix64(cfg.seed)
    snapshot = [n for n in g.topo_order() if g.is_and(n)]
    ctx = PassContext(g)
    log = DecisionLog()
    for v in snapshot:
        if g.is_dead(v):
            continue
        available = [0]
        cands = {}
        for code in (CODE_REWRITE, CODE_REFACTOR, CODE_RESUB):
            cand = check_for_code(g, v, code, ctx, zero_rw=cfg.zero_rw, zero_rf=cfg.zero_rf)
            if cand is not None:
                available.append(code)
                cands[code] = cand
        k = rng.below(len(available))
        selected = available[k]
        gain = 0
        if selected:
            gain = apply_candidate(g, cands[selected], ctx).gain
        log.records.append(DecisionRecord(node=v, available=tuple(available), selected=selected, gain=gain))
    if cfg.log_path:
        write_decision_log(log, cfg.log_path)
    return g, log


def write_decision_log(log: DecisionLog, path) -> None:
    lines = ["node,available,selected,gain"]
    for r in log.records:
        avail = "|".join(str(c) for c in r.available)
        lines.append(f"{r.node},{avail},{r.selected},{r.gain}")
    _atomic_write(path, "\n".join(lines) + "\n")


def _atomic_write(path, text: str) -> None:
    path = str(path)
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp_", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _one_sample(aig: Aig, sample_id: int, base_seed: int, k: int, limits: CecLimits):
    from .edgelist import write_edgelist_aig

    seed = base_seed + sample_id
    sample, log = aig_augment(aig, AugConfig(seed=seed))
    res = cec(aig, sample, limits)
    if not res.equivalent:
        raise EquivalenceFailure(sample_id, f"cec verdict {res.verdict}")
    stats = sample.stats()
    mapping = klut_map(sample, k)
    text = write_edgelist_aig(sample)
    label = {
        "sample_id": sample_id,
        "seed": seed,
        "and_count": stats.and_count,
        "level": stats.level,
        "lut_count": mapping.lut_count,
        "lut_depth": mapping.lut_depth,
    }
    return text, label


def batch_generate(aig: Aig, n: int, base_seed: int, out_dir, k: int = 4,
                   workers: int = 1, limits: Optional[CecLimits] = None) -> dict:
    """n equivalence-verified samples: sample_<i>.el, labels.csv, manifest.json."""
    if n < 1:
        raise ValueError("need n >= 1 samples")
    limits = limits or CecLimits()
    os.makedirs(out_dir, exist_ok=True)
    results = [None] * n
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {pool.submit(_one_sample, aig, i, base_seed, k, limits): i for i in range(n)}
            for fut, i in futs.items():
                results[i] = fut.result()
    else:
        for i in range(n):
            results[i] = _one_sample(aig, i, base_seed, k, limits)
    labels_lines = ["sample_id,seed,and_count,level,lut_count,lut_depth"]
    samples_meta = []
    for i, (text, label) in enumerate(results):
        fname = f"sample_{i}.el"
        _atomic_write(os.path.join(out_dir, fname), text)
        labels_lines.append(
            f"{label['sample_id']},{label['seed']},{label['and_count']},"
            f"{label['level']},{label['lut_count']},{label['lut_depth']}"
        )
        samples_meta.append(
            {"id": i, "file": fname, "and_count": label["and_count"], "level": label["level"]}
        )
    _atomic_write(os.path.join(out_dir, "labels.csv"), "\n".join(labels_lines) + "\n")
    manifest = {"design": aig.name, "n": n, "base_seed": base_seed, "samples": samples_meta}
    _atomic_write(os.path.join(out_dir, "manifest.json"), json.dumps(manifest, indent=1) + "\n")
    return manifest
