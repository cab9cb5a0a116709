"""Corpus statistics toolkit.

Measures whether a text obeys Zipf's law, Heaps' law, and long-range
correlation, with stochastic baseline generators (monkey typing, character
Markov models) and an encoding-rate probe built on an external compressor.
"""

from textlaws.corpus import (
    EmptyCorpusError,
    MarkerCollisionError,
    RawText,
    ShuffleSpec,
    filter_rare_symbols,
    preprocess_byte_level,
    preprocess_english,
    shuffle,
)
from textlaws.tokens import (
    NgramCountTable,
    TokenStream,
    count_ngrams,
    merge_counts,
    tokenize,
    words_from_chars,
)
from textlaws.zipfheaps import (
    BinnedSeries,
    FitError,
    GrowthCurve,
    PowerLawFit,
    RankFrequencyTable,
    exponent_trend,
    find_crossing,
    fit_power_law,
    log_bin,
    rank_frequency,
    vocabulary_growth,
)
from textlaws.longrange import (
    CorrelationSeries,
    DecayVerdict,
    IntervalSequence,
    acf_curve,
    autocorrelation,
    classify_decay,
    mi_curve,
    mutual_information,
    rare_word_intervals,
)
from textlaws.encrate import (
    AnsatzFit,
    CompressorError,
    EncodingRateCurve,
    encoding_rate_curve,
    fit_ansatz,
    resolve_compressor,
)
from textlaws.generators import (
    AnalyticMonkeyLaw,
    MarkovModel,
    MonkeySpec,
    markov_generate,
    markov_train,
    monkey_generate,
)

__version__ = "0.1.0"
