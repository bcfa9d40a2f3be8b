# tests/python/test_smoke.py

# Copyright 2026 The halscope Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import halscope


def test_normalize_and_tokenize():
    assert halscope.normalize_text("  Hello,   World! ") == "hello world"
    assert halscope.tokenize("a  b c") == ["a", "b", "c"]


def test_wer_on_phonetic_exemplar():
    ref = "millimeter roughly one twenty fifth of an inch"
    hyp = "miller made her roughly one twenty fifths of an inch"
    assert halscope.wer(ref, hyp) == 50.0
    counts = halscope.align(ref.split(), hyp.split())
    assert (counts["substitutions"], counts["insertions"], counts["deletions"]) == (2, 2, 0)


@pytest.mark.parametrize("v", [2, 10, 100])
def test_uniform_perplexity(v):
    lm = halscope.UniformLanguageModel(v)
    assert math.isclose(lm.perplexity("one two three four"), v, rel_tol=1e-9)


def test_ngram_model_prefers_training_text():
    lm = halscope.NgramLanguageModel.train(["the cat sat", "the cat ran"] * 5, order=2)
    assert lm.perplexity("the cat sat") < lm.perplexity("sat cat the")


def test_classify_and_oscillation():
    assert halscope.classify(10.0, 0.9, 50.0) == "CLEAN"
    assert halscope.classify(80.0, 0.05, 40.0) == "HALLUCINATION"
    assert halscope.classify(80.0, 0.05, 40.0, oscillating=True) == "OSCILLATION"
    osc = halscope.detect_oscillation("go on go on go on go on")
    assert osc is not None and osc["repeats"] >= 3
    assert halscope.detect_oscillation("a plain sentence") is None


def test_perturb_begin_is_local_and_bounded():
    x = (0.3 * np.sin(np.arange(32000) * 0.01)).astype(np.float32)
    y = halscope.perturb(x, 16000, "begin", amplitude=0.5, duration_s=1.0, seed=4)
    assert y.dtype == np.float32 and y.shape == x.shape
    assert np.array_equal(y[16000:], x[16000:])
    assert not np.array_equal(y[:16000], x[:16000])
    assert np.all(np.abs(y) <= 1.0)


def test_errors_carry_code():
    with pytest.raises(halscope.HalscopeError) as info:
        halscope.UniformLanguageModel(0)
    assert info.value.code == "InvalidConfig"
    with pytest.raises(halscope.HalscopeError):
        halscope.perturb(np.zeros(10, np.float32), 16000, amplitude=2.0)


def test_cli_end_to_end(tmp_path):
    d = str(tmp_path)
    code, _, err = halscope.run_cli(
        ["synth-corpus", "--utterances", "40", "--seed", "2", "--out-dir", d])
    assert code == 0, err
    code, out, err = halscope.run_cli([
        "detect", "--manifest", f"{d}/synthetic.tsv", "--backend", f"sim:{d}/sim.yaml",
        "--lm-train", f"{d}/lm_train.txt", "--out-dir", f"{d}/run"])
    assert code == 0, err
    report = json.loads((tmp_path / "run" / "report.json").read_text())
    assert report["summary"]["natural"]["evaluated"] == 40
    assert halscope.run_cli(["no-such-command"])[0] == 2
