"""Compare the compiled and pure-Python kernels on every engine and mode.

    python benchmarks/bench_backends.py [--buffer-bytes N] [--min-duration S] [--workers W] [--json]

The Python backend is capped at ``bench.PYTHON_BUFFER_CAP`` bytes per pass.
"""

import argparse
import json
import sys

from aesimg import _backend
from aesimg.bench import SUITE_BUFFER_BYTES, bench_suite, format_table


def speedups(report):
    by = {(r.backend, r.engine, r.mode, r.workers): r.throughput_gbps for r in report.records}
    out = {}
    for (backend, engine, mode, workers), gbps in by.items():
        base = by.get(("python", engine, mode, workers))
        if backend != "python" and base:
            out[f"{backend}/{engine.value}/{mode.name.lower()}/w{workers}"] = gbps / base
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--buffer-bytes", type=int, default=SUITE_BUFFER_BYTES)
    p.add_argument("--min-duration", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)

    names = _backend.available()
    report = bench_suite(args.buffer_bytes, args.min_duration, backends=names, workers=args.workers)
    ratios = speedups(report)
    if args.json:
        doc = report.to_dict()
        doc["speedup_over_python"] = ratios
        json.dump(doc, sys.stdout, indent=2, sort_keys=True)
        print()
        return 0
    print(format_table(report))
    if ratios:
        print("\ncompiled / pure-Python throughput")
        for key, ratio in ratios.items():
            print(f"  {key:28} {ratio:9.1f}x")
    elif names == ["python"]:
        print("\ncompiled extension not built; only the Python backend was measured")
    return 0


if __name__ == "__main__":
    sys.exit(main())
