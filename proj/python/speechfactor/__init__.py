# Copyright 2026 The speechfactor Authors.
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
"""Domain-factor perturbation of speech corpora."""

from ._speechfactor import (
    AlignmentInterval,
    AudioBuffer,
    Lexicon,
    ParseError,
    PhoneInventory,
    RenderParams,
    Segment,
    SegmentKind,
    SegmentPlan,
    SpeechFactorError,
    Unit,
    UtteranceAlignment,
    build_inventory,
    build_lexicon,
    chunk_words,
    lexicon_stats,
    load_alignment,
    noise,
    partition,
    random_span,
    read_wav,
    render,
    render_utterance,
    run_cli,
    sample_sentence,
    shuffle,
    speaker_split,
    utterance_seed,
    validate,
    white_noise,
    word_noise_sequence,
    write_wav,
)

__version__ = "0.1.0"
