"""Signed digit sequences, substitution rules and the curve catalog."""

from ._fracseq import (
    Perm,
    RuleError,
    bfile,
    characteristic_perm,
    compare,
    fold,
    format,
    gen,
    gen_lengths,
    gray,
    group,
    ids,
    inverse,
    is_hyper_orthogonal,
    is_normalized,
    level,
    minimal,
    negate,
    normalize,
    parse,
    reverse,
    rule_gen,
    rule_text_gen,
    svg,
    title,
    trace,
    verify,
)

__all__ = [
    "Perm", "RuleError", "bfile", "characteristic_perm", "compare", "fold", "format", "gen",
    "gen_lengths", "gray", "group", "ids", "inverse", "is_hyper_orthogonal", "is_normalized",
    "level", "minimal", "negate", "normalize", "parse", "reverse", "rule_gen", "rule_text_gen",
    "svg", "title", "trace", "verify",
]
