# Copyright 2026 The Summetrics Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Summary evaluation metrics, annotation analytics, and the scoring engine."""

from summetrics._core import (
    EmbeddingTable,
    InputError,
    ParameterError,
    __version__,
    bleu,
    chrf,
    cider,
    compression,
    coverage,
    density,
    evaluate_batch,
    evaluate_example,
    kendall_tau_b,
    krippendorff_alpha,
    meteor,
    movers_distance,
    novelty,
    pearson_r,
    porter_stem,
    redundancy,
    rouge_l,
    rouge_n,
    sentence_movers,
    split_sentences,
    tokenize,
)

__all__ = [
    "EmbeddingTable",
    "InputError",
    "ParameterError",
    "__version__",
    "bleu",
    "chrf",
    "cider",
    "compression",
    "coverage",
    "density",
    "evaluate_batch",
    "evaluate_example",
    "kendall_tau_b",
    "krippendorff_alpha",
    "meteor",
    "movers_distance",
    "novelty",
    "pearson_r",
    "porter_stem",
    "redundancy",
    "rouge_l",
    "rouge_n",
    "sentence_movers",
    "split_sentences",
    "tokenize",
]
