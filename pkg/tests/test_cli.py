import csv
import json
from pathlib import Path

import pytest

from aesimg.cli import EXIT_FORMAT, EXIT_INTEGRITY, EXIT_IO, EXIT_OK, EXIT_USAGE, main, repeated_blocks
from aesimg.image_io import load_pgm, read_container
from aesimg.modes import ctr_xcrypt

FIXTURES = Path(__file__).parent / "fixtures"
KEY = "000102030405060708090a0b0c0d0e0f"
OTHER = "ffeeddccbbaa99887766554433221100"
IV = "f0f1f2f3f4f5f6f7f8f9fafbfcfdfeff"


@pytest.fixture
def image(tmp_path):
    path = tmp_path / "img.pgm"
    assert main(["gen-image", str(path), "--width", "64", "--height", "48", "--seed", "4"]) == EXIT_OK
    return path


def run_json(capsys, argv):
    capsys.readouterr()
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_repeated_blocks():
    a, b = b"a" * 16, b"b" * 16
    assert repeated_blocks(a + b + a + a) == 3
    assert repeated_blocks(a + b) == 0


@pytest.mark.parametrize("mode", ["ctr", "ecb"])
@pytest.mark.parametrize("engine", ["unrolled", "fsm"])
def test_encrypt_decrypt_round_trip(tmp_path, image, mode, engine):
    enc, dec = tmp_path / "img.aesi", tmp_path / "out.pgm"
    assert main(["encrypt", str(image), str(enc), "--key", KEY, "--mode", mode, "--engine", engine]) == 0
    assert (tmp_path / "img.aesi.cipher.pgm").exists()
    assert main(["decrypt", str(enc), str(dec), "--key", KEY, "--engine", engine]) == 0
    assert dec.read_bytes() == image.read_bytes()


def test_ctr_with_fixed_iv_is_deterministic(tmp_path, image):
    argv = ["--key", KEY, "--iv", IV, "--allow-iv-reuse"]
    a, b = tmp_path / "a.aesi", tmp_path / "b.aesi"
    assert main(["encrypt", str(image), str(a)] + argv) == 0
    assert main(["encrypt", str(image), str(b), "--workers", "3"] + argv) == 0
    assert a.read_bytes() == b.read_bytes()
    c = read_container(a.read_bytes())
    assert c.iv.hex() == IV
    assert c.ciphertext == ctr_xcrypt(load_pgm(image).pixels, bytes.fromhex(KEY), bytes.fromhex(IV))


def test_ctr_random_iv_differs(tmp_path, image):
    a, b = tmp_path / "a.aesi", tmp_path / "b.aesi"
    main(["encrypt", str(image), str(a), "--key", KEY])
    main(["encrypt", str(image), str(b), "--key", KEY])
    assert read_container(a.read_bytes()).iv != read_container(b.read_bytes()).iv


def test_explicit_iv_needs_opt_in(tmp_path, image):
    assert main(["encrypt", str(image), str(tmp_path / "x.aesi"), "--key", KEY, "--iv", IV]) == EXIT_USAGE


def test_key_file(tmp_path, image):
    kf = tmp_path / "key.bin"
    kf.write_bytes(bytes.fromhex(KEY))
    enc = tmp_path / "k.aesi"
    assert main(["encrypt", str(image), str(enc), "--key-file", str(kf), "--mode", "ecb"]) == 0
    assert main(["decrypt", str(enc), str(tmp_path / "k.pgm"), "--key", KEY]) == 0
    kf.write_bytes(b"short")
    assert main(["encrypt", str(image), str(enc), "--key-file", str(kf)]) == EXIT_USAGE


@pytest.mark.parametrize("key", ["zz" * 16, "00" * 15, ""])
def test_bad_key_is_usage_error(tmp_path, image, key):
    assert main(["encrypt", str(image), str(tmp_path / "x.aesi"), "--key", key]) == EXIT_USAGE


def test_missing_input_is_io_error(tmp_path):
    assert main(["encrypt", str(tmp_path / "nope.pgm"), str(tmp_path / "x.aesi"), "--key", KEY]) == EXIT_IO


def test_malformed_pgm_is_format_error(tmp_path):
    src = FIXTURES / "malformed" / "maxval_65535.pgm"
    assert main(["encrypt", str(src), str(tmp_path / "x.aesi"), "--key", KEY]) == EXIT_FORMAT


def test_corrupted_container_magic(tmp_path, image):
    enc = tmp_path / "img.aesi"
    main(["encrypt", str(image), str(enc), "--key", KEY])
    raw = bytearray(enc.read_bytes())
    raw[0] ^= 0xFF
    enc.write_bytes(bytes(raw))
    assert main(["decrypt", str(enc), str(tmp_path / "o.pgm"), "--key", KEY]) == EXIT_FORMAT


def test_ecb_wrong_key_is_integrity_failure(tmp_path, image):
    enc = tmp_path / "img.aesi"
    main(["encrypt", str(image), str(enc), "--key", KEY, "--mode", "ecb"])
    out = tmp_path / "o.pgm"
    assert main(["decrypt", str(enc), str(out), "--key", OTHER]) == EXIT_INTEGRITY
    assert not out.exists()


def test_ctr_wrong_key_decrypts_to_noise(tmp_path, image):
    enc, out = tmp_path / "img.aesi", tmp_path / "o.pgm"
    main(["encrypt", str(image), str(enc), "--key", KEY])
    assert main(["decrypt", str(enc), str(out), "--key", OTHER]) == EXIT_OK
    assert out.read_bytes() != image.read_bytes()


def test_golden_container_decrypts(tmp_path):
    out = tmp_path / "g.pgm"
    for name in ("gradient_37x19_ctr.aesi", "gradient_37x19_ecb.aesi"):
        assert main(["decrypt", str(FIXTURES / name), str(out), "--key", KEY]) == 0
        assert out.read_bytes() == (FIXTURES / "gradient_37x19.pgm").read_bytes()


def test_json_output_is_clean(tmp_path, image, capsys):
    code, doc = run_json(capsys, ["encrypt", str(image), str(tmp_path / "j.aesi"), "--key", KEY, "--mode", "ecb"])
    assert code == 0
    assert doc["mode"] == "ecb" and doc["width"] == 64 and doc["ciphertext_bytes"] == 64 * 48 + 16
    assert doc["iv"] == "00" * 16


def test_analyze(tmp_path, image, capsys):
    enc = tmp_path / "img.aesi"
    main(["encrypt", str(image), str(enc), "--key", KEY])
    cipher = tmp_path / "img.aesi.cipher.pgm"
    out_dir = tmp_path / "csv"
    code, doc = run_json(capsys, ["analyze", str(image), str(cipher), "--out-dir", str(out_dir), "--prefix", "t_"])
    assert code == 0
    assert doc["entropy"]["cipher"] > doc["entropy"]["input"]
    assert len(doc["histogram_files"]) == 2 and len(doc["scatter_files"]) == 6
    with open(out_dir / "t_cipher_histogram.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["level", "count"] and len(rows) == 257
    assert sum(int(c) for _, c in rows[1:]) == 64 * 48
    with open(out_dir / "t_input_horizontal_pairs.csv") as fh:
        assert len(list(csv.reader(fh))) == 2001


def test_analyze_constant_image_reports_null(tmp_path, capsys):
    flat = tmp_path / "flat.pgm"
    flat.write_bytes(b"P5\n16 16\n255\n" + bytes(256))
    _, doc = run_json(capsys, ["analyze", str(flat), str(flat), "--out-dir", str(tmp_path)])
    assert doc["correlation"]["input"]["horizontal"] is None
    assert doc["entropy"]["input"] == 0.0


def test_analyze_size_mismatch(tmp_path, image):
    other = tmp_path / "other.pgm"
    main(["gen-image", str(other), "--width", "32", "--height", "32"])
    assert main(["analyze", str(image), str(other), "--out-dir", str(tmp_path)]) == EXIT_USAGE


@pytest.mark.parametrize("mode", ["ctr", "ecb"])
def test_keysens(tmp_path, image, capsys, mode):
    out_dir = tmp_path / "ks"
    code, doc = run_json(capsys, ["keysens", str(image), "--key", KEY, "--mode", mode, "--iv", IV,
                                  "--flip-bit", "127", "--out-dir", str(out_dir)])
    assert code == 0
    assert doc["right_key_exact"] and doc["flip_bit"] == 127
    # ECB repeats any coincidental byte match once per repeated block, so it scores lower
    assert doc["npcr"] > (99 if mode == "ctr" else 90)
    assert len(list(out_dir.glob("*.pgm"))) == 6
    assert json.loads((out_dir / "keysens.json").read_text())["npcr"] == doc["npcr"]
    assert (out_dir / "decrypt_right_key.pgm").read_bytes() == image.read_bytes()


def test_keysens_plaintext_diff(tmp_path, image, capsys):
    _, doc = run_json(capsys, ["keysens", str(image), "--key", KEY, "--plaintext-diff",
                               "--out-dir", str(tmp_path / "pd")])
    # CTR has no diffusion across pixels: one flipped plaintext bit changes one pixel
    assert doc["npcr"] == pytest.approx(100 / (64 * 48))


def test_keysens_bad_bit(tmp_path, image):
    assert main(["keysens", str(image), "--key", KEY, "--flip-bit", "128",
                 "--out-dir", str(tmp_path)]) == EXIT_USAGE


def test_ecb_demo(tmp_path, capsys):
    img = tmp_path / "flat.pgm"
    main(["gen-image", str(img), "--width", "256", "--height", "256"])
    _, doc = run_json(capsys, ["ecb-demo", str(img), "--key", KEY, "--out-dir", str(tmp_path / "demo")])
    assert doc["ecb"]["repeated_blocks"] >= 2 and doc["ctr"]["repeated_blocks"] == 0
    assert doc["ecb"]["entropy"] < doc["ctr"]["entropy"]
    assert (tmp_path / "demo" / "cipher_ecb.pgm").exists()


def test_gen_image(tmp_path, capsys):
    out = tmp_path / "g.pgm"
    _, doc = run_json(capsys, ["gen-image", str(out), "--width", "40", "--height", "20", "--pattern", "noise"])
    assert (doc["width"], doc["height"]) == (40, 20)
    img = load_pgm(out)
    assert img.size == 800
    assert main(["gen-image", str(out), "--width", "8"]) == EXIT_USAGE


def test_keyspace(capsys):
    code, doc = run_json(capsys, ["keyspace"])
    assert code == 0 and doc["size"] == "340282366920938463463374607431768211456"
    assert main(["keyspace", "--bits", "0"]) == EXIT_USAGE


def test_bench_json(capsys):
    code, doc = run_json(capsys, ["bench", "--buffer-bytes", "4096", "--min-duration", "0.02"])
    assert code == 0
    assert len(doc["measured"]) == 4
    assert all(r["throughput_gbps"] > 0 for r in doc["measured"])
    fsm = next(r for r in doc["fpga_reference"] if r["design"] == "FSM ECB" and r["device"] == "ZedBoard")
    assert fsm["throughput_gbps"] == 3.39


def test_bench_unknown_backend():
    assert main(["bench", "--backends", "rust", "--min-duration", "0.01"]) == EXIT_USAGE


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["encrypt"])
    assert exc.value.code == 2


def test_text_output_goes_to_stdout_without_json(tmp_path, image, capsys):
    main(["encrypt", str(image), str(tmp_path / "t.aesi"), "--key", KEY, "--mode", "ecb"])
    assert "wrote" in capsys.readouterr().out
