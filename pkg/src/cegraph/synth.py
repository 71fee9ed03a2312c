"""Synthetic inputs: a statement-grammar fuzzer producing valid Python
modules, and a deterministic three-run log for demos and end-to-end tests.

The bundled log (data/synthetic_run.jsonl) contains:
  chain-01: 12 samples in a strict parent chain (one parent each),
  pop-01:   4 seed samples plus 2 generations x 20 offspring (44 samples,
            40 edges, one sample with missing fitness),
  rs-01:    10 independent samples, no edges, where token_total strictly
            decreases while fitness strictly increases, so the token_total
            correlation cell for that group is exactly -1.
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

_NAME_POOL = (
    "alpha", "beta", "gamma", "delta", "idx", "val", "acc", "tmp",
    "data", "item", "total", "flag", "count", "left", "right", "buf",
)
_CALLS = ("len", "abs", "min", "max", "sum", "round", "sorted", "str", "int", "float")
_CMP = ("<", ">", "<=", ">=", "==", "!=")
_BIN = ("+", "-", "*", "//", "%")
_AUG = ("+=", "-=", "*=")


def _literal(rng: random.Random) -> str:
    r = rng.random()
    if r < 0.4:
        return str(rng.randint(-50, 99))
    if r < 0.6:
        return f"{rng.uniform(0.0, 9.0):.2f}"
    if r < 0.72:
        return rng.choice(("True", "False", "None"))
    if r < 0.86:
        return "'" + rng.choice(("a", "bc", "xyz", "k1", "tag")) + "'"
    items = ", ".join(str(rng.randint(0, 9)) for _ in range(rng.randint(0, 3)))
    return f"[{items}]"


def _name(rng: random.Random, names: list[str]) -> str:
    return rng.choice(names) if names else "seed"


def _expr(rng: random.Random, names: list[str], depth: int = 0) -> str:
    if depth >= 2 or rng.random() < 0.42:
        return _literal(rng) if rng.random() < 0.5 else _name(rng, names)
    a = _expr(rng, names, depth + 1)
    kind = rng.random()
    if kind < 0.28:
        return f"({a} {rng.choice(_BIN)} {_expr(rng, names, depth + 1)})"
    if kind < 0.42:
        return f"({a} {rng.choice(_CMP)} {_expr(rng, names, depth + 1)})"
    if kind < 0.52:
        return f"({a} {rng.choice(('and', 'or'))} {_expr(rng, names, depth + 1)})"
    if kind < 0.66:
        return f"{rng.choice(_CALLS)}({a})"
    if kind < 0.74:
        return f"({a} if {_expr(rng, names, depth + 1)} else {_expr(rng, names, depth + 1)})"
    if kind < 0.82:
        guard = f" if (it % {rng.randint(2, 4)}) == 0" if rng.random() < 0.4 else ""
        return f"[(it {rng.choice(_BIN)} {rng.randint(1, 9)}) for it in range({rng.randint(2, 9)}){guard}]"
    if kind < 0.9:
        return f"(lambda q: q {rng.choice(_BIN)} {rng.randint(1, 9)})({a})"
    return rng.choice((f"(-{a})", f"(not {a})"))


class _Fuzzer:
    """Emits random but always syntactically valid statements."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.fresh = 0

    def new_name(self) -> str:
        rng = self.rng
        if rng.random() < 0.55:
            self.fresh += 1
            return f"v{self.fresh}"
        return rng.choice(_NAME_POOL)

    def simple(self, indent: int, names: list[str], in_func: bool, in_loop: bool) -> list[str]:
        rng = self.rng
        pad = "    " * indent
        r = rng.random()
        if r < 0.42:
            target = self.new_name()
            line = f"{pad}{target} = {_expr(rng, names)}"
            if target not in names:
                names.append(target)
            return [line]
        if r < 0.56 and names:
            return [f"{pad}{_name(rng, names)} {rng.choice(_AUG)} {_expr(rng, names)}"]
        if r < 0.66:
            return [f"{pad}print({_expr(rng, names)})"]
        if r < 0.76 and in_func:
            return [f"{pad}return {_expr(rng, names)}"]
        if r < 0.8 and in_loop:
            return [f"{pad}{rng.choice(('break', 'continue'))}"]
        if r < 0.9:
            return [f"{pad}assert {_expr(rng, names)}"]
        return [f"{pad}pass"]

    def block(self, indent: int, names: list[str], in_func: bool, in_loop: bool, depth: int) -> list[str]:
        lines: list[str] = []
        for _ in range(self.rng.randint(1, 3)):
            lines.extend(self.stmt(indent, names, in_func, in_loop, depth))
        return lines

    def stmt(self, indent: int, names: list[str], in_func: bool, in_loop: bool, depth: int) -> list[str]:
        rng = self.rng
        pad = "    " * indent
        if depth < 3 and rng.random() < 0.36:
            kind = rng.random()
            if kind < 0.3:
                lines = [f"{pad}if {_expr(rng, names)}:"]
                lines += self.block(indent + 1, names, in_func, in_loop, depth + 1)
                if rng.random() < 0.5:
                    lines.append(f"{pad}else:")
                    lines += self.block(indent + 1, names, in_func, in_loop, depth + 1)
                return lines
            if kind < 0.55:
                it = self.new_name()
                names.append(it)
                lines = [f"{pad}for {it} in range({rng.randint(2, 12)}):"]
                lines += self.block(indent + 1, names, in_func, True, depth + 1)
                return lines
            if kind < 0.68:
                guard = self.new_name()
                names.append(guard)
                lines = [f"{pad}{guard} = {rng.randint(1, 6)}"]
                lines.append(f"{pad}while {guard} > 0:")
                body = [f"{'    ' * (indent + 1)}{guard} -= 1"]
                body += self.block(indent + 1, names, in_func, True, depth + 1)
                return lines + body
            if kind < 0.88:
                self.fresh += 1
                fname = f"fn{self.fresh}"
                # dedupe: repeated parameter names are a syntax error
                params = list(dict.fromkeys(
                    self.new_name() for _ in range(rng.randint(0, 3))
                ))
                lines = [f"{pad}def {fname}({', '.join(params)}):"]
                inner = list(dict.fromkeys(names + params))
                lines += self.block(indent + 1, inner, True, False, depth + 1)
                names.append(fname)
                if rng.random() < 0.5:
                    args = ", ".join(_expr(rng, names, 2) for _ in params)
                    target = self.new_name()
                    names.append(target)
                    lines.append(f"{pad}{target} = {fname}({args})")
                return lines
            lines = [f"{pad}try:"]
            lines += self.block(indent + 1, names, in_func, in_loop, depth + 1)
            lines.append(f"{pad}except Exception:")
            lines += self.block(indent + 1, names, in_func, in_loop, depth + 1)
            return lines
        return self.simple(indent, names, in_func, in_loop)


def random_module(rng: random.Random, approx_lines: int = 30) -> str:
    """A random syntactically valid module of roughly approx_lines lines."""
    fuzzer = _Fuzzer(rng)
    names = ["seed"]
    lines = [f"seed = {rng.randint(0, 99)}"]
    while len(lines) < approx_lines:
        lines.extend(fuzzer.stmt(0, names, False, False, 0))
    return "\n".join(lines) + "\n"


def _chain_code(step: int) -> str:
    """Search loop that accretes bookkeeping with each step."""
    lines = [
        "def solve(budget):",
        "    best = None",
        "    score = -1.0",
        "    for step in range(budget):",
        "        cand = (step * 37 + 11) % 101",
        "        val = 1.0 / (1.0 + (cand - 50) ** 2)",
        "        if val > score:",
        "            score = val",
        "            best = cand",
    ]
    for j in range(step):
        lines.append(f"        trace_{j} = score * {j + 1}")
    if step >= 4:
        lines += [
            "        if best is not None and step % 2 == 0:",
            "            cand = (cand + best) // 2",
        ]
    lines.append("    return best, score")
    if step >= 7:
        lines += [
            "",
            "def restart(budget, tries):",
            "    results = [solve(budget) for _ in range(tries)]",
            "    return max(results, key=lambda r: r[1])",
        ]
    return "\n".join(lines) + "\n"


def _rs_code(padding: int) -> str:
    """Fixed sampler plus a strictly token-counted padding tail."""
    lines = [
        "def sample(n):",
        "    out = []",
        "    for k in range(n):",
        "        out.append((k * 17 + 3) % 23)",
        "    return out",
    ]
    for j in range(padding):
        lines.append(f"pad_{j} = {j} * 2 + 1")
    return "\n".join(lines) + "\n"


def synthetic_samples() -> list[dict]:
    """The bundled three-run log as JSON-ready dicts, fully deterministic."""
    samples: list[dict] = []

    chain_fitness = [0.10, 0.10, 0.18, 0.18, 0.31, 0.31, 0.44, 0.52, 0.52, 0.61, 0.70, 0.83]
    for i in range(12):
        samples.append({
            "id": f"ch{i:02d}",
            "name": f"chain-step-{i}",
            "run_id": "chain-01",
            "method": "onepluslambda",
            "llm": "lm-alpha",
            "benchmark": "sphere-2d",
            "evaluation_index": i,
            "parent_ids": [] if i == 0 else [f"ch{i - 1:02d}"],
            "fitness_raw": chain_fitness[i],
            "code": _chain_code(i),
        })

    rng = random.Random(20240 + 7)
    eval_idx = 0
    seed_ids = []
    for i in range(4):
        sid = f"pp{eval_idx:02d}"
        seed_ids.append(sid)
        samples.append({
            "id": sid,
            "name": f"pop-seed-{i}",
            "run_id": "pop-01",
            "method": "pop-4p20",
            "llm": "lm-beta",
            "benchmark": "binpack-120",
            "evaluation_index": eval_idx,
            "parent_ids": [],
            "fitness_raw": round(0.2 + 0.1 * i + rng.random() * 0.05, 4),
            "code": random_module(random.Random(3000 + i), approx_lines=rng.randint(12, 26)),
        })
        eval_idx += 1
    parents = seed_ids
    for gen in range(2):
        children = []
        for j in range(20):
            sid = f"pp{eval_idx:02d}"
            children.append(sid)
            fitness = round(0.25 + 0.12 * gen + rng.random() * 0.45, 4)
            samples.append({
                "id": sid,
                "name": f"pop-g{gen + 1}-{j}",
                "run_id": "pop-01",
                "method": "pop-4p20",
                "llm": "lm-beta",
                "benchmark": "binpack-120",
                "evaluation_index": eval_idx,
                "parent_ids": [parents[j // 5]],
                "fitness_raw": None if (gen == 0 and j == 7) else fitness,
                "code": random_module(
                    random.Random(4000 + gen * 100 + j),
                    approx_lines=rng.randint(10, 30),
                ),
            })
            eval_idx += 1
        # next generation's parents: the four highest-fitness children
        scored = [
            (s["fitness_raw"], s["id"])
            for s in samples[-20:]
            if s["fitness_raw"] is not None
        ]
        scored.sort(reverse=True)
        parents = [sid for _, sid in scored[:4]]

    for i in range(10):
        samples.append({
            "id": f"rs{i:02d}",
            "name": f"rs-draw-{i}",
            "run_id": "rs-01",
            "method": "random-search",
            "llm": "lm-alpha",
            "benchmark": "sphere-2d",
            "evaluation_index": i,
            "parent_ids": [],
            "fitness_raw": round(0.1 * (i + 1), 4),
            "code": _rs_code(9 - i),
        })

    return samples


def write_synthetic_log(path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(s, ensure_ascii=False) for s in synthetic_samples()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="write the bundled synthetic run log")
    parser.add_argument("--out", default="data/synthetic_run.jsonl")
    args = parser.parse_args(argv)
    write_synthetic_log(args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
