"""Command line interface: ``pbpo <command> ...``.

JSON goes to stdout (DOT instead with ``--dot``). Errors are written to stderr
as ``{"error": code, "message": ...}``; the exit status is 1 for domain
errors and 2 for unreadable or malformed input.
"""
from __future__ import annotations

import sys

import click

from . import serialize as S
from .errors import FormatError, NoSuchMatch, PbpoError
from .graph import Graph, Morphism


def _report(exc: PbpoError) -> int:
    click.echo(S.dumps({"error": exc.code, "message": str(exc)}).rstrip(), err=True)
    return 2 if isinstance(exc, FormatError) else 1


def _emit(obj, dot=None, *, as_dot=False):
    if as_dot and dot is not None:
        click.echo(S.graphs_to_dot(dot), nl=False)
    else:
        click.echo(S.dumps(obj), nl=False)


def _load(path, parser, *args):
    return S.wrap_format_errors(lambda: parser(S.read_json(path), *args))


def _load_graph(path) -> Graph:
    return _load(path, S.graph_from_json)


dot_flag = click.option("--dot", "as_dot", is_flag=True, help="Emit DOT instead of JSON.")


@click.group()
@click.version_option(package_name="pbpoplus")
def cli():
    """PBPO+ graph rewriting over lattice-labeled multigraphs."""


@cli.command()
@click.argument("rule_file")
def validate(rule_file):
    """Check that a PBPO+ rule is well formed."""
    rule = _load(rule_file, S.rule_from_json)
    _emit({"valid": True, "name": rule.name, "heyting": rule.lattice.is_heyting(),
           "sizes": {n: [getattr(rule, n).num_vertices, getattr(rule, n).num_edges]
                     for n in ("L", "K", "R", "Lp", "Kp")}})


def _matches(rule, G, constraint, mode):
    from .rewrite import find_strong_matches

    return list(find_strong_matches(rule, G, constraint, mode=mode))


constraint_opt = click.option("--constraint", type=click.Choice(["any", "mono", "regular_mono"]),
                              default="any", show_default=True)
mode_opt = click.option("--mode", type=click.Choice(["alpha", "match"]), default="alpha",
                        show_default=True, help="Enumerate adherences or matches first.")


@cli.command()
@click.argument("rule_file")
@click.argument("graph_file")
@constraint_opt
@mode_opt
def match(rule_file, graph_file, constraint, mode):
    """List the strong matches of a rule in a host graph."""
    rule = _load(rule_file, S.rule_from_json)
    G = _load(graph_file, S.graph_from_json, rule.lattice)
    ms = _matches(rule, G, constraint, mode)
    _emit({"count": len(ms), "matches": [S.match_to_json(m, a, i) for i, (m, a) in enumerate(ms)]})


def _match_from_spec(rule, G, path):
    d = S.read_json(path)
    d = d.get("match", d) if isinstance(d, dict) else d

    def parse():
        return (S.morphism_from_json(S._get(d, "m"), rule.L, G),
                S.morphism_from_json(S._get(d, "alpha"), G, rule.Lp))
    return S.wrap_format_errors(parse)


@cli.command()
@click.argument("rule_file")
@click.argument("graph_file")
@click.option("--index", "match_index", type=int, default=0, show_default=True,
              help="Position in the match list printed by `match`.")
@click.option("--match", "match_file", default=None, help="JSON file with explicit m and alpha.")
@constraint_opt
@click.option("--rprime", is_flag=True, help="Also compute R' and w'.")
@dot_flag
def apply(rule_file, graph_file, match_index, match_file, constraint, rprime, as_dot):
    """Apply one rewrite step and print the step bundle."""
    from .rewrite import apply_step

    rule = _load(rule_file, S.rule_from_json)
    G = _load(graph_file, S.graph_from_json, rule.lattice)
    if match_file:
        m, alpha = _match_from_spec(rule, G, match_file)
    else:
        ms = _matches(rule, G, constraint, "alpha")
        if not 0 <= match_index < len(ms):
            raise NoSuchMatch(f"match index {match_index} out of range ({len(ms)} matches)")
        m, alpha = ms[match_index]
    res = apply_step(rule, G, m, alpha, with_rprime=rprime)
    _emit(S.step_to_json(res), {"GL": res.GL, "GK": res.GK, "GR": res.GR}, as_dot=as_dot)


@cli.command()
@click.argument("graph_file")
@click.argument("rule_files", nargs=-1, required=True)
@click.option("--strategy", type=click.Choice(["first", "all", "random"]), default="first",
              show_default=True)
@click.option("--max-steps", type=click.IntRange(min=0), default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@constraint_opt
@dot_flag
def normalize(graph_file, rule_files, strategy, max_steps, seed, constraint, as_dot):
    """Rewrite a graph until no rule applies or the step budget runs out."""
    from .rewrite import rewrite_closure

    rules = [_load(p, S.rule_from_json) for p in rule_files]
    G = _load(graph_file, S.graph_from_json, rules[0].lattice)
    tr = rewrite_closure(G, rules, strategy, max_steps, seed=seed, match_constraint=constraint)
    _emit(S.trace_to_json(tr), {"final": tr.final}, as_dot=as_dot)


_RULE_PARSERS = {"dpo": "dpo_rule_from_json", "agree": "agree_rule_from_json",
                 "pbpo": "pbpo_rule_from_json"}


@cli.command()
@click.option("--from", "source", type=click.Choice(["dpo", "agree", "pbpo"]), required=True)
@click.option("--mode", type=click.Choice(["full", "iso_only"]), default="full",
              show_default=True, help="Quotients used when compacting a PBPO rule.")
@click.argument("rule_file")
def translate(source, mode, rule_file):
    """Translate a DPO, AGREE or PBPO rule into PBPO+ rule JSON."""
    from .interop import compact_rules, translate_agree, translate_dpo

    rule = _load(rule_file, getattr(S, _RULE_PARSERS[source]))
    if source == "dpo":
        _emit(S.rule_to_json(translate_dpo(rule)))
    elif source == "agree":
        _emit(S.rule_to_json(translate_agree(rule)))
    else:
        rules = compact_rules(rule, mode)
        _emit({"kind": "rule-set", "rules": [S.rule_to_json(r) for r in rules]})


@cli.command("check-determinism")
@click.argument("rule_file")
def check_determinism(rule_file):
    """Report whether tL is a restricted classifier (at most one adherence per match)."""
    from .rewrite import determinism_certificate

    rule = _load(rule_file, S.rule_from_json)
    c = determinism_certificate(rule)
    _emit({"certified": c.certified, "reason": c.reason})


@cli.command()
@click.argument("graph_file")
@dot_flag
def classifier(graph_file, as_dot):
    """Print T(G) and the embedding eta."""
    from .classifier import classify_object

    G = _load_graph(graph_file)
    res = classify_object(G)
    out = S.bundle_to_json("classifier", {"G": G, "T": res.T}, {"eta": (res.eta, "G", "T")},
                           star=res.star_vertex)
    _emit(out, {"T": res.T}, as_dot=as_dot)


@cli.command()
@click.argument("morphism_file")
@dot_flag
def materialize(morphism_file, as_dot):
    """Materialize the morphism named ``f`` in a bundle."""
    from .classifier import materialize as mat

    def parse(d):
        _, g, m = S.bundle_from_json(d)
        if "f" not in m:
            raise FormatError("bundle has no morphism named 'f'")
        return m["f"]

    f = _load(morphism_file, parse)
    res = mat(f)
    graphs = {"A": f.dom, "M": res.M, "B": f.cod}
    out = S.bundle_to_json("materialization", graphs,
                           {"f_sharp": (res.f_sharp, "A", "M"), "f_flat": (res.f_flat, "M", "B")})
    _emit(out, {"M": res.M}, as_dot=as_dot)


@cli.command("check-square")
@click.argument("square_file")
def check_square(square_file):
    """Decide whether a square is a pullback or a pushout."""
    from .graph import commutes
    from .limits import is_pullback_square, is_pushout_square

    kind, f, g, a, b = _load(square_file, S.square_from_json)
    if kind == "pullback":
        ok = is_pullback_square(f, g, a, b)
        comm = commutes(a, f, b, g)
    else:
        ok = is_pushout_square(f, g, a, b)
        comm = commutes(f, a, g, b)
    _emit({"type": kind, "commutes": comm, "holds": ok})


def _fixture_json(v):
    from .interop import AgreeRule, DpoRule, PbpoRule
    from .rewrite import Rule

    if isinstance(v, (Rule, DpoRule, AgreeRule, PbpoRule)):
        return S.any_rule_to_json(v)
    if isinstance(v, Graph):
        return S.graph_to_json(v)
    if isinstance(v, Morphism):
        return S.morphism_body(v)
    if isinstance(v, dict):
        return {k: _fixture_json(x) for k, x in v.items()}
    if isinstance(v, (tuple, list)):
        return [_fixture_json(x) for x in v]
    return v


def _fixture_part(d, part):
    cur = d
    for key in part.split("."):
        if isinstance(cur, tuple):
            cur = cur[0]
        if not isinstance(cur, dict) or key not in cur:
            raise FormatError(f"fixture has no part {part!r}")
        cur = cur[key]
    return cur[0] if isinstance(cur, tuple) else cur


@cli.command()
@click.argument("name", required=False)
@click.option("--part", default=None,
              help="Emit one component, e.g. 'rule' or 'hosts.f(g(a),b)'.")
@dot_flag
def fixtures(name, part, as_dot):
    """Emit a built-in worked example (list them when NAME is omitted)."""
    from .fixtures import FIXTURES

    if name is None:
        _emit({"fixtures": sorted(FIXTURES)})
        return
    if name not in FIXTURES:
        raise FormatError(f"unknown fixture {name!r}")
    d = FIXTURES[name]()
    if part is not None:
        d = _fixture_part(d, part)
    if as_dot and isinstance(d, Graph):
        _emit(None, {part or name: d}, as_dot=True)
        return
    body = _fixture_json(d)
    _emit(body if part is not None else {"kind": "fixture", "name": name, **body})


@cli.command("oracle-step")
@click.option("--engine", type=click.Choice(["dpo", "agree", "pbpo"]), required=True)
@click.argument("rule_file")
@click.argument("graph_file")
@click.option("--index", "match_index", type=int, default=0, show_default=True)
@dot_flag
def oracle_step(engine, rule_file, graph_file, match_index, as_dot):
    """Run one step of a reference DPO, AGREE or PBPO engine."""
    from .interop import agree_step, dpo_step, pbpo_matches, pbpo_step
    from .search import enumerate_morphisms

    rule = _load(rule_file, getattr(S, _RULE_PARSERS[engine]))
    G = _load(graph_file, S.graph_from_json, rule.L.lattice)
    if engine == "pbpo":
        ms = list(pbpo_matches(rule, G))
    else:
        ms = [(m, None) for m in enumerate_morphisms(rule.L, G, "regular_mono")]
    if not 0 <= match_index < len(ms):
        raise NoSuchMatch(f"match index {match_index} out of range ({len(ms)} matches)")
    m, alpha = ms[match_index]
    out = {"engine": engine, "matches": len(ms), "m": S.morphism_body(m)}
    dot = None
    if engine == "dpo":
        r = dpo_step(rule, G, m)
        out["applicable"] = r is not None
        if r is not None:
            out["D"], out["GR"] = S.graph_body(r[0]), S.graph_body(r[1])
            dot = {"D": r[0], "GR": r[1]}
    else:
        GR = agree_step(rule, G, m) if engine == "agree" else pbpo_step(rule, G, m, alpha)
        if alpha is not None:
            out["alpha"] = S.morphism_body(alpha)
        out["GR"] = S.graph_body(GR)
        dot = {"GR": GR}
    _emit(out, dot, as_dot=as_dot)


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="pbpo", standalone_mode=False)
    except PbpoError as exc:
        sys.exit(_report(exc))
    except click.exceptions.Abort:
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
