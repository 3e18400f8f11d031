"""Regenerate the committed benchmark graphs under graphs/.

The two 50-task benchmark files follow the Standard Task Graph Set layout
(declared count excludes the zero-cost dummy entry/exit nodes).  The
published set is distributed online; this repository pins locally generated
instances with the same shape so the benchmark suite works offline and the
numbers stay reproducible.  Each graph is derived purely from its seed, so
rerunning this script must reproduce the committed files byte for byte.

The augmented variants (non-zero comm costs) are the same graphs passed
through the default comm augmentation (seed 0, range [1, 20]), exactly what
``tgsched augment --graph <file> --out <file>_cc.json`` produces.

Usage: python3 scripts/generate_benchmark_graphs.py
"""

from pathlib import Path

from tgsched.graph import CommAugmentSpec, augment_comm, parse_stg, to_native
from tgsched.rng import Xoshiro256StarStar

REAL_TASKS = 50
COST_RANGE = (1, 20)
PRED_WINDOW = 12  # predecessors come from the 12 preceding real tasks
OUT_DIR = Path(__file__).resolve().parent.parent / "graphs"

SPECS = [
    ("rand0010.stg", 10),
    ("rand0016.stg", 16),
]


def generate_stg(seed: int) -> str:
    """One 50-task random DAG in STG text form, ids 0..51 with dummies."""
    rng = Xoshiro256StarStar(seed)
    n = REAL_TASKS
    exit_id = n + 1
    costs = {0: 0, exit_id: 0}
    preds: dict[int, list[int]] = {0: []}
    for t in range(1, n + 1):
        costs[t] = rng.randint(*COST_RANGE)
        if t == 1:
            preds[t] = [0]
            continue
        lo = max(1, t - PRED_WINDOW)
        candidates = list(range(lo, t))
        want = min(rng.randint(1, 3), len(candidates))
        chosen: list[int] = []
        for _ in range(want):
            pick = candidates.pop(rng.randbelow(len(candidates)))
            chosen.append(pick)
        preds[t] = sorted(chosen)
    has_succ = {u for t in range(2, n + 1) for u in preds[t]}
    for t in range(1, n + 1):
        if not preds[t]:
            preds[t] = [0]
    preds[exit_id] = sorted(t for t in range(1, n + 1) if t not in has_succ)

    lines = [str(n)]
    for t in range(n + 2):
        p = preds[t]
        lines.append(" ".join(str(x) for x in [t, costs[t], len(p), *p]))
    lines.append(f"# generated fixture, seed {seed}")
    return "\n".join(lines) + "\n"


def main():
    OUT_DIR.mkdir(exist_ok=True)
    for name, seed in SPECS:
        text = generate_stg(seed)
        stg_path = OUT_DIR / name
        stg_path.write_text(text, encoding="utf-8")
        g = parse_stg(text)
        spec = CommAugmentSpec(seed=0, min_comm=1, max_comm=20)
        augmented = augment_comm(g, spec)
        meta = {
            "source": name,
            "augment": {
                "seed": spec.seed,
                "min_comm": spec.min_comm,
                "max_comm": spec.max_comm,
            },
        }
        cc_path = OUT_DIR / f"{stg_path.stem}_cc.json"
        cc_path.write_text(to_native(augmented, meta=meta), encoding="utf-8")
        print(f"{stg_path} ({g.task_count} tasks, {len(g.edges)} edges) -> {cc_path}")


if __name__ == "__main__":
    main()
