"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 I/O, 4 format, 5 decryption integrity.
With ``--json`` a single JSON document goes to stdout and all human-readable
text goes to stderr.
"""

import argparse
import collections
import csv
import json
import os
import sys
from pathlib import Path

from . import analysis, bench, synthetic
from ._backend import available as available_backends
from .aes_core import EngineKind, backend_name
from .errors import DimensionMismatch, FormatError, PaddingError, RangeError, SizeError
from .image_io import CipherContainer, load_pgm, read_container, save_pgm, stream_to_image, write_container
from .modes import ModeKind, decrypt, encrypt

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_FORMAT, EXIT_INTEGRITY = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _hex16(text, what):
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise UsageError(f"{what} must be hex") from None
    if len(raw) != 16:
        raise UsageError(f"{what} must be 32 hex characters (16 bytes), got {len(raw)} bytes")
    return raw


def _key(args):
    if args.key_file:
        with open(args.key_file, "rb") as fh:
            raw = fh.read()
        if len(raw) != 16:
            raise UsageError(f"key file must hold exactly 16 raw bytes, got {len(raw)}")
        return raw
    if not args.key:
        raise UsageError("one of --key or --key-file is required")
    return _hex16(args.key, "key")


def _say(args, msg):
    print(msg, file=sys.stderr if getattr(args, "json", False) else sys.stdout)


def _emit_json(doc):
    json.dump(doc, sys.stdout, indent=2, sort_keys=True, allow_nan=False, default=_json_default)
    sys.stdout.write("\n")


def _json_default(obj):
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def _finite(x):
    return None if x != x else x  # NaN -> null


def repeated_blocks(data: bytes) -> int:
    """Number of 16-byte blocks whose value occurs more than once."""
    counts = collections.Counter(data[i:i + 16] for i in range(0, len(data) - 15, 16))
    return sum(c for c in counts.values() if c > 1)


# --- subcommands -------------------------------------------------------------

def cmd_encrypt(args):
    key = _key(args)
    mode = ModeKind[args.mode.upper()]
    engine = EngineKind(args.engine)
    if mode is ModeKind.CTR:
        if args.iv and not args.allow_iv_reuse:
            raise UsageError("an explicit --iv risks keystream reuse; add --allow-iv-reuse to accept that")
        iv = _hex16(args.iv, "iv") if args.iv else os.urandom(16)
    else:
        iv = bytes(16)
    img = load_pgm(args.input)
    ct = encrypt(img.pixels, key, mode, iv, engine, workers=args.workers)
    container = CipherContainer(mode, iv, img.width, img.height, ct)
    out = Path(args.output)
    out.write_bytes(write_container(container))
    preview = out.with_name(out.name + ".cipher.pgm")
    save_pgm(container.cipher_image(), preview)
    doc = {
        "mode": args.mode,
        "engine": engine.value,
        "iv": iv.hex(),
        "width": img.width,
        "height": img.height,
        "ciphertext_bytes": len(ct),
        "repeated_blocks": repeated_blocks(ct),
        "container": str(out),
        "backend": backend_name(),
        "cipher_image": str(preview),
    }
    if args.json:
        _emit_json(doc)
    _say(args, f"wrote {out} and {preview} ({args.mode}, {len(ct)} bytes, iv {iv.hex()})")
    return EXIT_OK


def cmd_decrypt(args):
    key = _key(args)
    container = read_container(Path(args.input).read_bytes())
    try:
        pt = decrypt(container.ciphertext, key, container.mode, container.iv, EngineKind(args.engine),
                     workers=args.workers)
    except PaddingError:
        print("error: decryption integrity failure (wrong key or corrupted ciphertext)", file=sys.stderr)
        return EXIT_INTEGRITY
    if len(pt) != container.width * container.height:
        print("error: decryption integrity failure (plaintext size does not match the image)", file=sys.stderr)
        return EXIT_INTEGRITY
    save_pgm(stream_to_image(pt, container.width, container.height), args.output)
    if args.json:
        _emit_json({"output": args.output, "width": container.width, "height": container.height})
    _say(args, f"wrote {args.output} ({container.width}x{container.height})")
    return EXIT_OK


def _write_histogram(path, hist):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["level", "count"])
        w.writerows(enumerate(int(c) for c in hist))


def _write_scatter(path, img, direction, seed):
    x, y = analysis.sample_pairs(img, direction, 2000, seed)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y"])
        w.writerows(zip(x.tolist(), y.tolist()))


def cmd_analyze(args):
    plain = load_pgm(args.input)
    cipher = load_pgm(args.cipher)
    try:
        report = analysis.security_report(plain, cipher)
    except DimensionMismatch as exc:
        raise UsageError(f"images differ in size: {exc}") from None
    out_dir = Path(args.out_dir) if args.out_dir else Path(args.cipher).parent
    out_dir.mkdir(parents=True, exist_ok=True)
    hist_files, scatter_files = [], []
    for label, img, hist in (("input", plain, report.input_histogram), ("cipher", cipher, report.cipher_histogram)):
        hpath = out_dir / f"{args.prefix}{label}_histogram.csv"
        _write_histogram(hpath, hist)
        hist_files.append(str(hpath))
        for d in analysis.Direction:
            spath = out_dir / f"{args.prefix}{label}_{d.value}_pairs.csv"
            _write_scatter(spath, img, d, args.seed)
            scatter_files.append(str(spath))
    doc = report.to_dict()
    doc["correlation"] = {k: {d: _finite(r) for d, r in v.items()} for k, v in doc["correlation"].items()}
    doc["histogram_files"] = hist_files
    doc["scatter_files"] = scatter_files
    doc["width"], doc["height"] = plain.width, plain.height
    if args.json:
        _emit_json(doc)
    _say(args, _format_report(doc))
    return EXIT_OK


def _format_report(doc):
    lines = [f"{'metric':22} {'input':>10} {'cipher':>10}"]
    lines.append(f"{'entropy':22} {doc['entropy']['input']:10.5f} {doc['entropy']['cipher']:10.5f}")
    for d in ("horizontal", "vertical", "diagonal"):
        a, b = doc["correlation"]["input"][d], doc["correlation"]["cipher"][d]
        fa = "undefined" if a is None else f"{a:.5f}"
        fb = "undefined" if b is None else f"{b:.5f}"
        lines.append(f"{d + ' correlation':22} {fa:>10} {fb:>10}")
    lines.append(f"{'chi-square':22} {doc['chi_square_input']:10.1f} {doc['chi_square']:10.1f}")
    lines.append(f"NPCR {doc['npcr']:.4f}%  UACI {doc['uaci']:.4f}%")
    return "\n".join(lines)


def cmd_keysens(args):
    key = _key(args)
    mode = ModeKind[args.mode.upper()]
    iv = _hex16(args.iv, "iv") if args.iv else os.urandom(16)
    img = load_pgm(args.input)
    if not 0 <= args.flip_bit < 128:
        raise UsageError("--flip-bit must be in 0..127")
    engine = EngineKind(args.engine)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.plaintext_diff:
        doc = _plaintext_sensitivity(img, key, mode, engine, iv)
    else:
        rep = analysis.key_sensitivity_suite(img, key, args.flip_bit, mode, engine, iv)
        files = {}
        for name, im in (
            ("original", rep.original),
            ("cipher_right_key", rep.cipher_right),
            ("cipher_flipped_key", rep.cipher_flipped),
            ("cipher_difference", rep.difference),
            ("decrypt_wrong_key", rep.decrypt_wrong),
            ("decrypt_right_key", rep.decrypt_right),
        ):
            path = out_dir / f"{name}.pgm"
            save_pgm(im, path)
            files[name] = str(path)
        doc = rep.to_dict()
        doc["files"] = files
    doc["iv"] = iv.hex()
    doc["engine"] = engine.value
    (out_dir / "keysens.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if args.json:
        _emit_json(doc)
    _say(args, f"NPCR {doc['npcr']:.4f}%  UACI {doc['uaci']:.4f}%  (artifacts in {out_dir})")
    return EXIT_OK


def _plaintext_sensitivity(img, key, mode, engine, iv):
    # flip the low bit of the first pixel; CTR is expected to score near zero here
    changed = bytearray(img.pixels)
    changed[0] ^= 1
    c1 = stream_to_image(encrypt(img.pixels, key, mode, iv, engine), img.width, img.height)
    c2 = stream_to_image(encrypt(bytes(changed), key, mode, iv, engine), img.width, img.height)
    return {
        "mode": mode.name.lower(),
        "plaintext_diff": True,
        "npcr": analysis.npcr(c1, c2),
        "uaci": analysis.uaci(c1, c2),
    }


def cmd_ecb_demo(args):
    key = _key(args)
    img = load_pgm(args.input)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    iv = os.urandom(16)
    engine = EngineKind(args.engine)
    doc = {"width": img.width, "height": img.height}
    for mode in ModeKind:
        ct = encrypt(img.pixels, key, mode, iv, engine)
        cimg = stream_to_image(ct, img.width, img.height)
        path = out_dir / f"cipher_{mode.name.lower()}.pgm"
        save_pgm(cimg, path)
        doc[mode.name.lower()] = {
            "repeated_blocks": repeated_blocks(ct),
            "entropy": analysis.entropy(cimg),
            "chi_square": analysis.chi_square_uniformity(analysis.histogram(cimg)),
            "cipher_image": str(path),
        }
    if args.json:
        _emit_json(doc)
    _say(args, "\n".join(
        f"{m}: {doc[m]['repeated_blocks']} repeated blocks, entropy {doc[m]['entropy']:.5f}" for m in ("ecb", "ctr")
    ))
    return EXIT_OK


def cmd_bench(args):
    backends = None
    if args.backends == "all":
        backends = available_backends()
    elif args.backends:
        backends = [b.strip() for b in args.backends.split(",") if b.strip()]
        unknown = set(backends) - {"cython", "python"}
        if unknown:
            raise UsageError(f"unknown backend(s): {', '.join(sorted(unknown))}")
    try:
        report = bench.bench_suite(args.buffer_bytes, args.min_duration, backends=backends, workers=args.workers)
    except ImportError as exc:
        raise UsageError(f"backend not available: {exc}") from None
    if args.json:
        _emit_json(report.to_dict())
    _say(args, bench.format_table(report))
    return EXIT_OK


def cmd_gen_image(args):
    img = synthetic.generate(args.width, args.height, args.seed, args.pattern)
    save_pgm(img, args.output)
    if args.json:
        _emit_json({"output": args.output, "width": img.width, "height": img.height, "pattern": args.pattern})
    _say(args, f"wrote {args.output} ({args.pattern}, {img.width}x{img.height}, seed {args.seed})")
    return EXIT_OK


def cmd_keyspace(args):
    rep = analysis.keyspace_report(args.bits)
    if args.json:
        _emit_json(rep.to_dict())
    _say(args, f"{rep.bits}-bit key: {rep.size} keys to search exhaustively")
    return EXIT_OK


# --- argument parsing --------------------------------------------------------

def _add_key(p):
    p.add_argument("--key", help="cipher key as 32 hex characters")
    p.add_argument("--key-file", help="file holding the 16 raw key bytes")


def _add_engine(p):
    p.add_argument("--engine", choices=[e.value for e in EngineKind], default="fsm")


def build_parser():
    parser = argparse.ArgumentParser(prog="aesimg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="aesimg 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="encrypt a PGM image into an AESI container")
    p.add_argument("input")
    p.add_argument("output")
    _add_key(p)
    _add_engine(p)
    p.add_argument("--mode", choices=["ecb", "ctr"], default="ctr")
    p.add_argument("--iv", help="CTR initial counter, 32 hex characters (needs --allow-iv-reuse)")
    p.add_argument("--allow-iv-reuse", action="store_true")
    p.add_argument("--workers", type=int, default=1, help="threads for CTR keystream generation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt an AESI container back into a PGM image")
    p.add_argument("input")
    p.add_argument("output")
    _add_key(p)
    _add_engine(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="histogram, correlation, entropy, NPCR/UACI for a plain/cipher pair")
    p.add_argument("input")
    p.add_argument("cipher")
    p.add_argument("--out-dir", help="where CSV files go (default: next to the cipher image)")
    p.add_argument("--prefix", default="", help="prefix for CSV file names")
    p.add_argument("--seed", type=int, default=0, help="seed for the scatter-plot pair sample")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("keysens", help="one-bit key sensitivity experiment")
    p.add_argument("input")
    _add_key(p)
    _add_engine(p)
    p.add_argument("--mode", choices=["ecb", "ctr"], default="ctr")
    p.add_argument("--iv", help="CTR initial counter shared by both keys (random if omitted)")
    p.add_argument("--flip-bit", type=int, default=0, help="key bit to flip, 0 = MSB of the first byte")
    p.add_argument("--out-dir", default="keysens")
    p.add_argument("--plaintext-diff", action="store_true",
                   help="flip one plaintext bit instead of a key bit")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_keysens)

    p = sub.add_parser("ecb-demo", help="encrypt one image under ECB and CTR and compare the leakage")
    p.add_argument("input")
    _add_key(p)
    _add_engine(p)
    p.add_argument("--out-dir", default="ecb_demo")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ecb_demo)

    p = sub.add_parser("bench", help="measure software throughput next to the FPGA reference figures")
    p.add_argument("--buffer-bytes", type=int, default=bench.SUITE_BUFFER_BYTES)
    p.add_argument("--min-duration", type=float, default=bench.SUITE_MIN_DURATION)
    p.add_argument("--backends", help="comma-separated backends to measure, or 'all' (default: active)")
    p.add_argument("--workers", type=int, default=1, help="also measure threaded CTR with this many threads")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-image", help="write a deterministic synthetic test image")
    p.add_argument("output")
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--height", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pattern", choices=synthetic.PATTERNS, default="flat-regions")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen_image)

    p = sub.add_parser("keyspace", help="size of the brute-force search space")
    p.add_argument("--bits", type=int, default=128)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_keyspace)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, SizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
