"""
Jet commands: Boardman symbols, Jacobian codimension, Z^k and strata tables
"""

import logging

from cli.report import CommandResult
from cli.sources import load_function_germ, load_jet
from config import CATALOG
from managers.boardman_engine import BoardmanEngine
from managers.germ_analyzer import GermAnalyzer
from managers.symbol_calculus import enumerate_symbols, mu
from models.inputs import FoliatedGermInput
from models.truncated_poly import format_poly
from utils.exceptions import PreconditionError


class JetCommands:
    """The `jet` command group"""

    def __init__(self, engine: BoardmanEngine = None):
        self.engine = engine or BoardmanEngine()
        self.analyzer = GermAnalyzer(self.engine)

    def register(self, subparsers, common):
        jet = subparsers.add_parser("jet", help="Exact jet computations")
        commands = jet.add_subparsers(dest="command", required=True)

        symbol = commands.add_parser("symbol", parents=[common], help="Boardman symbol of a jet")
        symbol.add_argument("input", help="JSON file or catalog germ name")
        symbol.add_argument("--order", type=int, help="Symbol length (defaults to the jet order)")
        symbol.set_defaults(handler=self.symbol)

        codim = commands.add_parser("codim", parents=[common], help="Jacobian codimension report")
        codim.add_argument("input", help="JSON file or catalog germ name")
        codim.add_argument("--order", type=int, help="Working order W")
        codim.add_argument("--zk", type=int, action="append", help="Decide Z^k for this k (repeatable)")
        codim.set_defaults(handler=self.codim)

        zk = commands.add_parser("zk", parents=[common], help="Z^k membership of a singular jet")
        zk.add_argument("input", help="JSON file or catalog germ name")
        zk.add_argument("--k", type=int, required=True)
        zk.set_defaults(handler=self.zk)

        strata = commands.add_parser("strata", parents=[common], help="Boardman strata of J^k(n, p)")
        strata.add_argument("--n", type=int, required=True)
        strata.add_argument("--p", type=int, required=True)
        strata.add_argument("--k", type=int, required=True)
        strata.add_argument("--max-codim", type=int, required=True)
        strata.set_defaults(handler=self.strata)

    # -- handlers -----------------------------------------------------------

    def symbol(self, args) -> CommandResult:
        document = load_jet(args.input)
        if isinstance(document, FoliatedGermInput):
            return self._foliated_symbol(document, args.order)
        jet = document.to_map_jet()
        symbol = self.engine.boardman_symbol(jet, args.order)
        report = {
            'kind': 'map',
            'jet': jet.describe(),
            'n': jet.source_dim,
            'p': jet.target_dim,
            'order': args.order or jet.jet_order,
            'symbol': symbol.to_list(),
        }
        summary = {'jet': jet.describe(), 'n': jet.source_dim, 'p': jet.target_dim, 'symbol': str(symbol)}
        rows = [{'symbol': str(symbol), 'mu': mu(symbol)}]
        return CommandResult("Boardman symbol", report, rows, summary)

    def _foliated_symbol(self, document: FoliatedGermInput, order) -> CommandResult:
        fjet = document.to_foliated_jet()
        k = order or fjet.jet_order
        leaf_symbol = self.engine.boardman_symbol(self.engine.leaf_jet(fjet), k)
        map_symbol = self.engine.boardman_symbol(self.engine.extended_map_jet(fjet), k)
        symbol = self.engine.foliated_symbol(fjet, k)
        ranks = self.engine.splitting_ranks(fjet, k)
        rows = []
        for step in range(k):
            rows.append({
                'step': step,
                'leaf_rank': ranks.leaf_ranks[step],
                'map_rank': ranks.map_ranks[step],
                'splitting': self.engine.transverse_splitting_check(fjet, step, k),
            })
        report = {
            'kind': 'foliated',
            'jet': fjet.describe(),
            'leaf_dim': fjet.leaf_dim,
            'transverse_dim': fjet.transverse_dim,
            'order': k,
            'symbol': symbol.to_list(),
            'leaf_pipeline': leaf_symbol.to_list(),
            'map_pipeline': map_symbol.to_list(),
            'ranks_consistent': ranks.consistent(),
            'steps': rows,
        }
        summary = {
            'jet': fjet.describe(),
            'symbol': str(symbol),
            'leaf pipeline': str(leaf_symbol),
            'map pipeline': str(map_symbol),
        }
        return CommandResult("Foliated Boardman symbol", report, rows, summary)

    def codim(self, args) -> CommandResult:
        germ = load_function_germ(args.input)
        f = germ.to_map_jet().components[0]
        report = self.analyzer.germ_report(f, args.order, args.zk)
        sequence = self.analyzer.quotient_dimension_sequence(f, report.codim.order)
        data = report.to_dict()
        data['quotient_sequence'] = sequence
        rows = [{'k': z.k, 'member': z.member, 'span': z.span_dimension, 'ambient': z.ambient_dimension}
                for z in report.zk]
        summary = {
            'germ': report.germ,
            'codim': report.codim.label(),
            'isolated': report.isolated,
            'determinacy bound': report.determinacy_bound,
            'symbol': report.symbol,
            'working order': report.codim.order,
        }
        return CommandResult("Jacobian codimension", data, rows, summary)

    def zk(self, args) -> CommandResult:
        germ = load_function_germ(args.input)
        f = germ.to_map_jet().components[0]
        result = self.analyzer.zk_membership(f, args.k)
        summary = {
            'jet': format_poly(f),
            'k': result.k,
            'member': result.member,
            'span dimension': result.span_dimension,
            'ambient dimension': result.ambient_dimension,
            'codim': result.codim.label(),
        }
        return CommandResult(f"Z^{args.k} membership", result.to_dict(), [], summary)

    def strata(self, args) -> CommandResult:
        if args.n < 1 or args.p < 1 or args.k < 1:
            raise PreconditionError("--n, --p and --k must be positive")
        found = enumerate_symbols(args.n, args.p, args.k, args.max_codim)
        rows = [{'symbol': str(symbol), 'codim': codim} for symbol, codim in found]
        report = {
            'n': args.n,
            'p': args.p,
            'k': args.k,
            'max_codim': args.max_codim,
            'strata': [{'symbol': symbol.to_list(), 'codim': codim} for symbol, codim in found],
        }
        logging.info(f"Enumerated {len(rows)} strata of J^{args.k}({args.n}, {args.p})")
        return CommandResult(f"Strata of J^{args.k}({args.n}, {args.p})", report, rows,
                             {'strata': len(rows)}, columns=['symbol', 'codim'])


def catalog_listing(_args) -> CommandResult:
    """Rows for every catalog germ and chart"""
    rows = []
    for name, entry in CATALOG["germs"].items():
        rows.append({'kind': 'germ', 'name': name, 'definition': ", ".join(entry["components"]),
                     'dimensions': f"n={entry['n']}, p={entry['p']}, k={entry['order']}"})
    for name, entry in CATALOG["charts"].items():
        rows.append({'kind': 'chart', 'name': name, 'definition': entry["expression"],
                     'dimensions': f"n={entry['n']}, q={entry['q']}"})
    report = {'germs': sorted(CATALOG["germs"]), 'charts': sorted(CATALOG["charts"])}
    return CommandResult("Catalog", report, rows, columns=['kind', 'name', 'definition', 'dimensions'])
