"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines; every
expected value is produced by an independent oracle inside this module.
"""

import itertools
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from fuzzkey import (
    CipherEnvelope,
    CipherKey,
    DataFormatError,
    DefuzzConfig,
    DynamicFuzzyNetwork,
    IntegrityError,
    MODE_LETTERS,
    MembershipFunction,
    RelevanceScore,
    RuleBase,
    decrypt,
    defuzzify_centroid,
    encrypt,
    eval_membership,
    evaluate_rules,
    fuzzify,
    make_uniform_partition,
    open_envelope,
    relevance_inference,
    seal,
    select_topk,
)

HERE = Path(__file__).resolve().parent
FIXTURE = HERE / "data" / "fixture_5x20.csv"


def report_line(number, name, ok):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {name}")


# --- criterion 1 -----------------------------------------------------------

def interp_oracle(x, mf):
    if mf.kind == "left-shoulder":
        return float(np.interp(x, [mf.a, mf.c], [1.0, 0.0]))
    if mf.kind == "triangle":
        return float(np.interp(x, [mf.a, mf.b, mf.c], [0.0, 1.0, 0.0]))
    return float(np.interp(x, [mf.b, mf.c], [0.0, 1.0]))


def random_mf(rng):
    while True:
        points = sorted(rng.uniform(0.0, 1.0) for _ in range(3))
        if points[1] - points[0] >= 1e-3 and points[2] - points[1] >= 1e-3:
            break
    kind = rng.choice(["left-shoulder", "triangle", "right-shoulder"])
    if kind == "left-shoulder":
        return MembershipFunction.left_shoulder(points[0], points[1])
    if kind == "triangle":
        return MembershipFunction.triangle(*points)
    return MembershipFunction.right_shoulder(points[0], points[1])


def test_criterion_1_membership_fidelity():
    ok = False
    try:
        rng = random.Random(101)
        eps = 1e-6
        started = time.perf_counter()
        for _ in range(10_000):
            mf = random_mf(rng)
            x = rng.uniform(0.0, 1.0)
            assert abs(eval_membership(x, mf) - interp_oracle(x, mf)) <= 1e-12
            bound = 10 * eps / mf.min_slope_width()
            for p in mf.breakpoints():
                left = eval_membership(max(p - eps, 0.0), mf)
                right = eval_membership(min(p + eps, 1.0), mf)
                assert abs(left - right) <= bound
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0, f"fidelity check took {elapsed:.2f}s"
        ok = True
    finally:
        report_line(1, "membership-function fidelity vs interpolation oracle", ok)


# --- criterion 2 -----------------------------------------------------------

def test_criterion_2_partition_of_unity():
    ok = False
    try:
        for n_sets in range(2, 8):
            partition = make_uniform_partition(n_sets)
            for x in np.linspace(0.0, 1.0, 1000):
                total = math.fsum(fuzzify(float(x), partition).degrees)
                assert abs(total - 1.0) <= 1e-9
        ok = True
    finally:
        report_line(2, "partition of unity for N in 2..7", ok)


# --- criterion 3 -----------------------------------------------------------

def centroid_oracle(activation, centers):
    numerator = 0.0
    denominator = 0.0
    for y, m in zip(centers, activation):
        numerator += y * m
        denominator += m
    return None if denominator == 0.0 else numerator / denominator


def test_criterion_3_centroid_correctness():
    ok = False
    try:
        rng = random.Random(303)
        for _ in range(10_000):
            n_sets = rng.randint(2, 7)
            centers = tuple(sorted(rng.uniform(0.0, 1.0) for _ in range(n_sets)))
            cfg = DefuzzConfig(centers, empty_activation_value=rng.uniform(0.0, 1.0))
            activation = tuple(
                0.0 if rng.random() < 0.1 else rng.uniform(0.0, 1.0) for _ in range(n_sets)
            )
            expected = centroid_oracle(activation, centers)
            got = defuzzify_centroid(activation, cfg)
            if expected is None:
                assert got == cfg.empty_activation_value
            else:
                assert abs(got - expected) <= 1e-12
        paper_activation = (0.7, 0.3, 0.0)
        cfg = DefuzzConfig((0.0, 0.5, 1.0))
        assert abs(defuzzify_centroid(paper_activation, cfg) - 0.15) <= 1e-12
        ok = True
    finally:
        report_line(3, "centroid vs brute-force weighted average", ok)


# --- criterion 4 -----------------------------------------------------------

def test_criterion_4_relevance_monotonicity():
    ok = False
    try:
        partition = make_uniform_partition(3)
        rules = RuleBase.identity(3)
        defuzz = DefuzzConfig.uniform(3)

        def crisp(v):
            return defuzzify_centroid(evaluate_rules(fuzzify(v, partition), rules), defuzz)

        rng = random.Random(404)
        violations = 0
        strict_pairs = 0
        for _ in range(10_000):
            size = rng.randint(1, 10)
            low = [rng.uniform(0.0, 1.0) for _ in range(size)]
            high = [min(v + rng.uniform(0.0, 0.5), 1.0) for v in low]
            score_low = relevance_inference(low, partition, rules, defuzz)
            score_high = relevance_inference(high, partition, rules, defuzz)
            if score_high < score_low:
                violations += 1
            crisp_low = [crisp(v) for v in low]
            crisp_high = [crisp(v) for v in high]
            assert all(h >= l for h, l in zip(crisp_high, crisp_low))
            if any(h > l for h, l in zip(crisp_high, crisp_low)):
                strict_pairs += 1
                if not score_high > score_low:
                    violations += 1
        assert violations == 0
        assert strict_pairs > 5000  # the draw actually stresses the strict branch
        ok = True
    finally:
        report_line(4, "relevance monotonicity under pointwise dominance", ok)


# --- criterion 5 -----------------------------------------------------------

def exhaustive_topk(scores, k):
    exact = [Fraction(s.score) for s in scores]
    best = None
    best_total = None
    for subset in itertools.combinations(range(len(scores)), min(k, len(scores))):
        total = sum(exact[i] for i in subset)
        if best_total is None or total > best_total:
            best, best_total = subset, total
    return set(best)


def test_criterion_5_topk_oracle_equivalence():
    ok = False
    try:
        partition = make_uniform_partition(3)
        rng = random.Random(505)
        mismatches = 0
        for _ in range(200):
            n = rng.randint(1, 8)
            m = rng.randint(1, 16)
            columns = [[rng.uniform(0.0, 1.0) for _ in range(m)] for _ in range(n)]
            if rng.random() < 0.3:  # force score ties via duplicated columns
                columns[rng.randrange(n)] = columns[rng.randrange(n)]
            scores = [
                RelevanceScore(i, relevance_inference(col, partition)) for i, col in enumerate(columns)
            ]
            k = rng.randint(0, n)
            chosen = set(select_topk(scores, k).selected)
            if chosen != exhaustive_topk(scores, k):
                mismatches += 1
        assert mismatches == 0
        ok = True
    finally:
        report_line(5, "top-k equals exhaustive subset enumeration", ok)


# --- criterion 6 -----------------------------------------------------------

def test_criterion_6_complexity_counters():
    ok = False
    try:
        rng = random.Random(606)
        for _ in range(50):
            n = rng.randint(1, 12)
            n_sets = rng.randint(2, 7)
            n_layers = rng.randint(4, 8)
            net = DynamicFuzzyNetwork(n, n_sets, n_layers)
            x = [rng.uniform(0.0, 1.0) for _ in range(n)]
            _, _, stats = net.propagate(x)
            assert stats.mf_evals == n_sets * n
            expected_ops = sum(w.shape[0] * w.shape[1] for w in net.weights)
            assert stats.hidden_ops == expected_ops
        ok = True
    finally:
        report_line(6, "propagation counters: mf_evals = N*n exactly", ok)


# --- criterion 7 -----------------------------------------------------------

TABULA = [[chr((row + col) % 26 + 65) for col in range(26)] for row in range(26)]


def tabula_recta(plaintext, key):
    return "".join(
        TABULA[ord(key[i % len(key)]) - 65][ord(p) - 65] for i, p in enumerate(plaintext)
    )


def test_criterion_7_cipher_roundtrip():
    ok = False
    try:
        rng = random.Random(707)
        for _ in range(1000):
            plaintext = bytes(rng.randrange(256) for _ in range(rng.randint(0, 80)))
            key = CipherKey(bytes(rng.randrange(256) for _ in range(rng.randint(1, 12))))
            assert decrypt(encrypt(plaintext, key), key) == plaintext
        for _ in range(1000):
            letters = "".join(chr(rng.randint(65, 90)) for _ in range(rng.randint(0, 80)))
            key_text = "".join(chr(rng.randint(65, 90)) for _ in range(rng.randint(1, 12)))
            key = CipherKey(key_text.encode(), MODE_LETTERS)
            assert decrypt(encrypt(letters.encode(), key), key) == letters.encode()
        assert encrypt(b"anything goes", CipherKey(b"\x00\x00")) == b"anything goes"
        assert encrypt(b"HELLO", CipherKey(b"AAAAA", MODE_LETTERS)) == b"HELLO"
        expected = tabula_recta("HELLO", "SECRET").encode()
        assert encrypt(b"HELLO", CipherKey(b"SECRET", MODE_LETTERS)) == expected
        ok = True
    finally:
        report_line(7, "cipher roundtrips; HELLO+SECRET matches tabula recta", ok)


# --- criterion 8 -----------------------------------------------------------

def reference_tag(message, key):
    t = 14695981039346656037
    for i, m in enumerate(message):
        t = ((t ^ (m ^ key[i % len(key)])) * 1099511628211) & ((1 << 64) - 1)
    return t


GOLDEN_ENVELOPE = bytes.fromhex("465a4b31010101a3a5b123dca1ffe45a494e4353")


def test_criterion_8_envelope_format():
    ok = False
    try:
        key = CipherKey(b"SECRET", MODE_LETTERS)
        envelope = seal(b"HELLO", key, with_tag=True)
        # golden bytes assembled by hand: magic, version 1, mode 1, flags 1,
        # big-endian reference tag over the ciphertext, then "ZINCS"
        tag = reference_tag(b"ZINCS", b"SECRET")
        assert tag == 11792025966923087844
        hand_built = b"FZK1" + bytes([1, 1, 1]) + tag.to_bytes(8, "big") + b"ZINCS"
        assert hand_built == GOLDEN_ENVELOPE
        assert envelope.to_bytes() == GOLDEN_ENVELOPE
        decoded = CipherEnvelope.from_bytes(GOLDEN_ENVELOPE)
        assert decoded == envelope
        assert open_envelope(decoded, key) == b"HELLO"

        rng = random.Random(808)
        detected = 0
        payload_start = 7  # corrupt the authenticated region: tag plus ciphertext
        for _ in range(100):
            raw = bytearray(GOLDEN_ENVELOPE)
            position = rng.randrange(payload_start, len(raw))
            raw[position] ^= 1 << rng.randrange(8)
            try:
                open_envelope(CipherEnvelope.from_bytes(bytes(raw)), key)
            except (IntegrityError, DataFormatError):
                detected += 1
        assert detected == 100
        # structural header corruption is caught by field validation
        for position in (0, 4):
            raw = bytearray(GOLDEN_ENVELOPE)
            raw[position] ^= 0xFF
            with pytest.raises(DataFormatError):
                CipherEnvelope.from_bytes(bytes(raw))
        ok = True
    finally:
        report_line(8, "FZK1 envelope golden bytes and corruption detection", ok)


# --- criterion 9 -----------------------------------------------------------

def run_pipeline(tmp_path, key_path, jobs, run_id):
    env = os.environ.copy()
    env["PYTHONPATH"] = str(HERE.parent / "src") + os.pathsep + env.get("PYTHONPATH", "")
    env["FUZZKEY_KEY_FILE"] = str(key_path)
    envelope_path = tmp_path / f"run{run_id}.fzk"
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "fuzzkey",
            "pipeline",
            str(FIXTURE),
            "--k",
            "3",
            "--jobs",
            str(jobs),
            "--output",
            str(envelope_path),
        ],
        capture_output=True,
        env=env,
    )
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout, envelope_path.read_bytes()


def test_criterion_9_end_to_end_determinism(tmp_path):
    ok = False
    try:
        key_path = tmp_path / "key.bin"
        key_path.write_bytes(b"fixture-key")
        runs = [run_pipeline(tmp_path, key_path, jobs, i) for i, jobs in enumerate([1, 1, 1, 4])]
        reports = {report for report, _ in runs}
        envelopes = {envelope for _, envelope in runs}
        assert len(reports) == 1
        assert len(envelopes) == 1
        ok = True
    finally:
        report_line(9, "pipeline determinism across runs and worker counts", ok)
