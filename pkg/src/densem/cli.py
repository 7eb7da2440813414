"""Command-line surface: measures, reductions, composition, and repro cases."""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from . import lexicon as lexicon_io
from . import repro
from .compose import compose, compose_kronecker
from .density import classify, fidelity, representativeness
from .errors import DensemError, TypeParseError
from .pregroup import format_type, parse_type, reduce as reduce_types
from .spectral import Tolerance

_LOG_BASES = {"2": 2.0, "e": math.e}


def measure_options(f):
    f = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")(f)
    f = click.option(
        "--tol",
        type=float,
        default=None,
        help="Override the relative rank/match tolerance (default 1e-9).",
    )(f)
    f = click.option(
        "--log-base",
        type=click.Choice(["2", "e"]),
        default="2",
        show_default=True,
        help="Logarithm base for divergence-derived scores.",
    )(f)
    return f


def _tolerance(tol: float | None) -> Tolerance | None:
    return Tolerance(rank_cut=tol, match_tol=tol) if tol is not None else None


def _load_lexicon(path: str) -> lexicon_io.Lexicon:
    try:
        return lexicon_io.load(path)
    except FileNotFoundError:
        raise click.ClickException(f"no such lexicon file: {path}")
    except lexicon_io.LexiconFormatError as err:
        raise click.ClickException(str(err))


def _lookup(lex: lexicon_io.Lexicon, word: str):
    try:
        return lex.word(word)
    except DensemError as err:
        raise click.ClickException(str(err))


def _format_matrix(matrix: np.ndarray) -> str:
    return np.array2string(
        matrix, formatter={"float_kind": lambda x: f"{x: .4f}"}, separator=" "
    )


def _matrix_payload(matrix: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in matrix]


def _emit(as_json: bool, payload: dict, human: str):
    if as_json:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(human)


@click.group()
@click.version_option(package_name="densem")
def main():
    """Graded similarity and entailment for operator-valued word meanings."""


@main.command()
@click.argument("lexicon_path", metavar="LEXICON")
@click.argument("word_a")
@click.argument("word_b")
@measure_options
def sim(lexicon_path, word_a, word_b, as_json, tol, log_base):
    """Compare two lexicon words: fidelity, both entailment scores, verdict."""
    lex = _load_lexicon(lexicon_path)
    base = _LOG_BASES[log_base]
    tolerance = _tolerance(tol)
    a = _lookup(lex, word_a).dm
    b = _lookup(lex, word_b).dm
    try:
        f = fidelity(a, b, tol=tolerance)
        verdict = classify(a, b, base=base, tol=tolerance)
    except DensemError as err:
        raise click.ClickException(str(err))
    payload = {
        "word_a": word_a,
        "word_b": word_b,
        "fidelity": f,
        "representativeness_ab": verdict.forward,
        "representativeness_ba": verdict.backward,
        "relation": verdict.relation.value,
        "log_base": log_base,
    }
    human = "\n".join(
        [
            f"F({word_a}, {word_b})  = {f:.4f}",
            f"R({word_a} -> {word_b}) = {verdict.forward:.4f}",
            f"R({word_b} -> {word_a}) = {verdict.backward:.4f}",
            f"relation: {verdict.relation.value}",
        ]
    )
    _emit(as_json, payload, human)


main.add_command(sim, name="entail")


@main.command(name="reduce")
@click.argument("types", nargs=-1, required=True)
@click.option("--target", default="s", show_default=True, help="Target type string.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def reduce_cmd(types, target, as_json):
    """Reduce a sequence of word types; print the link diagram if one exists."""
    try:
        sequence = [parse_type(t) for t in types]
        target_type = parse_type(target)
    except TypeParseError as err:
        raise click.UsageError(str(err))
    diagram = reduce_types(sequence, target_type)
    if diagram is None:
        _emit(as_json, {"reduces": False}, "NO REDUCTION")
        sys.exit(1)
    payload = {
        "reduces": True,
        "links": [list(link) for link in diagram.links],
        "residuals": list(diagram.residuals),
        "target": format_type(diagram.target),
    }
    human = "\n".join(
        [
            f"links: {[list(link) for link in diagram.links]}",
            f"residuals: {list(diagram.residuals)}",
        ]
    )
    _emit(as_json, payload, human)


@main.command(name="compose")
@click.argument("lexicon_path", metavar="LEXICON")
@click.argument("words", nargs=-1, required=True)
@click.option("--target", default="s", show_default=True, help="Target type string.")
@click.option(
    "--kronecker",
    metavar="VERB",
    default=None,
    help="Use the named verb table in the entrywise closed form (words: SUBJ OBJ).",
)
@click.option(
    "--against",
    default=None,
    help="Space-separated second word sequence to compare the sentence with.",
)
@measure_options
def compose_cmd(lexicon_path, words, target, kronecker, against, as_json, tol, log_base):
    """Compose lexicon words into a sentence operator."""
    lex = _load_lexicon(lexicon_path)
    base = _LOG_BASES[log_base]
    tolerance = _tolerance(tol)

    def build(word_list):
        if kronecker is not None:
            if len(word_list) != 2:
                raise click.UsageError(
                    "the entrywise closed form takes exactly two words: SUBJ OBJ"
                )
            try:
                table = lex.verb_table(kronecker)
            except DensemError as err:
                raise click.ClickException(str(err))
            subj = _lookup(lex, word_list[0]).dm
            obj = _lookup(lex, word_list[1]).dm
            try:
                return compose_kronecker(table.table, subj, obj)
            except DensemError as err:
                raise click.ClickException(str(err))
        meanings = [_lookup(lex, w) for w in word_list]
        try:
            target_type = parse_type(target)
        except TypeParseError as err:
            raise click.UsageError(str(err))
        diagram = reduce_types([m.ptype for m in meanings], target_type)
        if diagram is None:
            raise click.ClickException(
                f"types of {' '.join(word_list)} do not reduce to '{target}'"
            )
        try:
            return compose(meanings, diagram, lex.registry).dm
        except DensemError as err:
            raise click.ClickException(str(err))

    sentence = build(list(words))
    payload = {
        "words": list(words),
        "matrix": _matrix_payload(sentence.matrix),
        "trace": sentence.trace,
    }
    lines = [
        f"sentence operator for: {' '.join(words)}",
        _format_matrix(sentence.matrix),
        f"trace = {sentence.trace:.4f}",
    ]
    if against is not None:
        other_words = against.split()
        other = build(other_words)
        try:
            f = fidelity(sentence, other, tol=tolerance)
            fwd = representativeness(sentence, other, base=base, tol=tolerance)
            bwd = representativeness(other, sentence, base=base, tol=tolerance)
        except DensemError as err:
            raise click.ClickException(str(err))
        payload["against"] = {
            "words": other_words,
            "matrix": _matrix_payload(other.matrix),
            "trace": other.trace,
            "fidelity": f,
            "representativeness_fwd": fwd,
            "representativeness_bwd": bwd,
            "log_base": log_base,
        }
        lines += [
            "",
            f"against: {' '.join(other_words)}",
            _format_matrix(other.matrix),
            f"trace = {other.trace:.4f}",
            f"F  = {f:.4f}",
            f"R(first -> second) = {fwd:.4f}",
            f"R(second -> first) = {bwd:.4f}",
        ]
    _emit(as_json, payload, "\n".join(lines))


@main.command(name="repro")
@click.argument("case_id", required=False, type=click.Choice(sorted(repro.CASES)))
@click.option("--all", "run_all_cases", is_flag=True, help="Run every case.")
@measure_options
def repro_cmd(case_id, run_all_cases, as_json, tol, log_base):
    """Re-evaluate the built-in worked examples against their expected values."""
    del tol  # repro cases pin their own tolerances
    if run_all_cases == (case_id is not None):
        raise click.UsageError("give exactly one of CASE_ID or --all")
    base = _LOG_BASES[log_base]
    results = repro.run_all(base) if run_all_cases else [repro.run_case(case_id, base)]
    if as_json:
        click.echo(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        for result in results:
            click.echo(f"case {result.case_id}: {'PASS' if result.passed else 'FAIL'}")
            for check in result.checks:
                if check.mode == "gt":
                    detail = f"got {check.got:.6f}, needs > {check.expected:.6f}"
                else:
                    detail = f"got {check.got:.6f}, expected {check.expected:.6f} ± {check.tol:g}"
                if check.hard:
                    status = "PASS" if check.passed else "FAIL"
                else:
                    status = "pass" if check.passed else "MISS (reported, non-gating)"
                click.echo(f"  [{status}] {check.name}: {detail}")
            for note in result.notes:
                click.echo(f"  note: {note}")
    if not all(r.passed for r in results):
        sys.exit(1)


@main.group(name="lexicon")
def lexicon_group():
    """Lexicon file utilities."""


@lexicon_group.command(name="validate")
@click.argument("path")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def lexicon_validate(path, as_json):
    """Schema-check a lexicon file and summarize its contents."""
    lex = _load_lexicon(path)
    payload = {
        "valid": True,
        "spaces": {atom: lex.registry.dim(atom) for atom in lex.registry.atoms()},
        "words": sorted(lex.words()),
        "verbs": sorted(lex.verbs()),
    }
    human = (
        f"OK: {len(lex.registry.atoms())} spaces, {len(lex.words())} words, "
        f"{len(lex.verbs())} verb tables"
    )
    _emit(as_json, payload, human)


if __name__ == "__main__":
    main()
