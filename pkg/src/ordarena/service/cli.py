"""Command-line entry points."""

from __future__ import annotations

import atexit
import json
import os
import sys

import click

from ordarena import ordinal
from ordarena.service.state import ServiceError, SessionStore


@click.group()
def main():
    """Workbench for clocked back-and-forth games, step-function groups and
    exact diagram arithmetic."""


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8423, show_default=True, type=int)
@click.option("--snapshot", default=None, help="newline-delimited JSON snapshot path "
              "(defaults to $ORDARENA_SNAPSHOT)")
@click.option("--static-dir", default=None, help="frontend bundle directory")
def serve(host, port, snapshot, static_dir):
    """Run the HTTP session API (and the arena UI when built)."""
    import uvicorn

    from ordarena.service.http import SNAPSHOT_ENV, create_app

    store = SessionStore()
    snapshot = snapshot or os.environ.get(SNAPSHOT_ENV)
    if snapshot and os.path.exists(snapshot):
        store.load_snapshot(snapshot)
        click.echo(f"loaded snapshot from {snapshot}")
    if snapshot:
        atexit.register(lambda: store.save_snapshot(snapshot))
    app = create_app(store, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--kind", default="EFD", type=click.Choice(["EFD", "PI"]))
@click.option("--a", "side_a", default="order:w+1", show_default=True)
@click.option("--b", "side_b", default="order:w+1", show_default=True)
@click.option("--clock", default="3", show_default=True)
@click.option("--engine", default="II", type=click.Choice(["I", "II"]), show_default=True)
@click.option("--strategy", default="auto", show_default=True)
@click.option("--opponent-seed", default=0, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
def play(kind, side_a, side_b, clock, engine, strategy, opponent_seed, seed):
    """Play one engine-vs-random match and print the transcript JSON."""
    from ordarena.service.state import _build_engine, build_structure, create_session

    session = create_session({"kind": kind, "A": side_a, "B": side_b, "clock": clock,
                              "engine": engine, "strategy": strategy, "seed": seed})
    other_side = "I" if engine == "II" else "II"
    a, b = session.a, session.b
    opponent = _build_engine(kind, other_side, "random" if other_side == "I" else
                             ("echo_mirror" if kind == "PI" else "random"),
                             a, b, session.clock, opponent_seed)
    while session.status != "Finished":
        if session.pending is None:
            move = opponent.move(session.position, a, b)
            payload = {"clock": ordinal.format_ord(move.clock), "side": move.side.value,
                       "element": (a if move.side.value == "A" else b).element_to_json(move.element)}
            if kind == "PI":
                payload["eps"] = str(move.eps)
            session.post_move(payload)
        else:
            if kind == "PI":
                pair = opponent.answer(session.position, session.pending, a, b)
                session.post_move({"a": a.element_to_json(pair[0]), "b": b.element_to_json(pair[1])})
            else:
                answer = opponent.answer(session.position, session.pending, a, b)
                side = session.pending.side.value
                answered = b if side == "A" else a
                session.post_move({"element": answered.element_to_json(answer)})
    click.echo(json.dumps(session.state_json(), indent=2))


@main.command()
@click.option("--a", "size_a", required=True, type=int)
@click.option("--b", "size_b", required=True, type=int)
@click.option("--clock", required=True, type=int)
def solve(size_a, size_b, clock):
    """Exact minimax over the full game tree on finite linear orders."""
    from ordarena.efgame import BruteForceSolver, FiniteOrder

    result = BruteForceSolver(FiniteOrder(size_a), FiniteOrder(size_b)).solve(clock)
    click.echo(json.dumps({"a": size_a, "b": size_b, "clock": clock,
                           "winner": result.winner,
                           "certificate": result.certificate.provenance}))


@main.command()
@click.option("--a", "ord_a", required=True)
@click.option("--b", "ord_b", required=True)
@click.option("--clock", required=True, type=int)
def equiv(ord_a, ord_b, clock):
    """Back-and-forth equivalence of two ordinal orders at a finite clock."""
    from ordarena.efgame import decide_equiv_finite_clock

    result = decide_equiv_finite_clock(ordinal.parse(ord_a), ordinal.parse(ord_b), clock)
    click.echo(json.dumps({"a": ord_a, "b": ord_b, "clock": clock,
                           "equivalent": result.equivalent,
                           "certificate_for": "II" if result.equivalent else "I"}))


@main.command()
@click.option("--k", required=True, type=int)
@click.option("--levels", default=3, show_default=True, type=int)
@click.option("--format", "fmt", default="dot", type=click.Choice(["dot", "json"]),
              show_default=True)
def bratteli(k, levels, fmt):
    """Exact diagram of the dimension-k inductive system."""
    from ordarena.bratteli import diagram_for_dimension, export

    click.echo(export(diagram_for_dimension(k, levels), fmt))


@main.command()
@click.argument("formula")
def translate(formula):
    """Translate an ordered-group s-expression formula to the semigroup
    language; prints the result with both ranks."""
    from ordarena.logic import from_sexpr, qr, to_sexpr, translate_k0_to_v

    phi = from_sexpr(formula)
    psi = translate_k0_to_v(phi)
    click.echo(json.dumps({
        "input": to_sexpr(phi),
        "input_rank": ordinal.format_ord(qr(phi)),
        "output": to_sexpr(psi),
        "output_rank": ordinal.format_ord(qr(psi)),
    }, indent=2))


@main.command()
@click.argument("formula")
def qr(formula):
    """Quantifier rank of an s-expression formula."""
    from ordarena.logic import from_sexpr
    from ordarena.logic import qr as rank_of

    click.echo(ordinal.format_ord(rank_of(from_sexpr(formula))))


if __name__ == "__main__":
    main()
