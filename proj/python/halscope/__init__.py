# python/halscope/__init__.py

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

"""Hallucination analysis for speech recognition."""

from ._halscope import (
    HalscopeError,
    LanguageModel,
    NgramLanguageModel,
    UniformLanguageModel,
    align,
    classify,
    detect_oscillation,
    normalize_text,
    perturb,
    rouge1,
    run_cli,
    sentence_bleu,
    sentence_chrf,
    tokenize,
    wer,
)

__all__ = [
    "HalscopeError",
    "LanguageModel",
    "NgramLanguageModel",
    "UniformLanguageModel",
    "align",
    "classify",
    "detect_oscillation",
    "normalize_text",
    "perturb",
    "rouge1",
    "run_cli",
    "sentence_bleu",
    "sentence_chrf",
    "tokenize",
    "wer",
]
