import argparse
import logging

from components.algebra import parse_field_literal, smallest_field
from components.codes import (
    PmdsParams,
    completion_search,
    field_size_bound_general_s,
    field_size_bound_s1,
    minimal_ell1_field,
    necessary_conditions_general_s,
)
from components.formats import BodyKind, CodeFile, VerdictReport
from constants import DEFAULT_SEARCH_BUDGET
from controllers.interfaces import CommandControllerInterface
from utils import parse_int_list

logger = logging.getLogger(__name__)


class SearchController(CommandControllerInterface):

    NAME = "search"
    HELP = "Complete the '*' entries of a template into a PMDS generator"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("file", help="Template file, '*' for wildcards")
        parser.add_argument(
            "--budget",
            type=int,
            default=DEFAULT_SEARCH_BUDGET,
            help=f"Maximal number of assignments (default {DEFAULT_SEARCH_BUDGET})",
        )
        parser.add_argument("--progress", action="store_true", help="Show a progress bar")

    def run(self, args: argparse.Namespace) -> VerdictReport:
        document = CodeFile.load(args.file, BodyKind.TEMPLATE)
        template = document.template()
        result = completion_search(template, document.params, args.budget, args.progress)
        parameters = {
            "file": str(args.file),
            "code": document.params.describe(),
            "field": document.spec.literal,
            "wildcards": len(template.wildcards),
            "budget": args.budget,
        }

        verdict = {"ok": bool(result), "completions": len(result.solutions), "nodes": result.nodes}
        if result.completion is None:
            verdict["output"] = "none\n"
        else:
            completed = CodeFile.from_matrix(result.completion, document.params)
            verdict["output"] = completed.dumps()
        return VerdictReport(self.NAME, parameters, verdict)


class BoundsController(CommandControllerInterface):

    NAME = "bounds"
    HELP = "Minimal field size for PMDS parameters"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--m", type=int, required=True, help="Number of blocks")
        parser.add_argument("--l", dest="ell", type=int, required=True, help="Locality")
        parser.add_argument(
            "--r", type=parse_int_list, default=None, help="Local redundancies (default all 1)"
        )
        parser.add_argument("--s", type=int, default=1, help="Global parities (default 1)")
        parser.add_argument(
            "--field",
            type=parse_field_literal,
            default=None,
            help="Also check the necessary MDS conditions over this field",
        )

    def run(self, args: argparse.Namespace) -> VerdictReport:
        r = args.r or (1,) * args.m
        params = PmdsParams.with_s(args.m, args.ell, r, args.s)
        parameters = {"code": params.describe(), "m": params.m, "l": params.ell, "s": params.s}

        if params.s == 1:
            bound = field_size_bound_s1(params.ell, params.max_r)
            q, conditional, case = bound.q, bound.conditional, bound.case
        elif params.ell == 1:
            q = minimal_ell1_field(params.m, params.s).order
            conditional, case = True, f"[{params.m},{params.m - params.s}]-MDS outer code"
        else:
            bound = field_size_bound_general_s(params)
            q, conditional, case = bound.q, bound.conditional, bound.case

        verdict = {
            "ok": True,
            "minimal_q": q,
            "minimal_field": smallest_field(q).literal,
            "conditional": conditional,
            "case": case,
        }
        if args.field is not None:
            report = necessary_conditions_general_s(params, args.field)
            parameters["field"] = args.field.literal
            verdict.update(
                ok=report.satisfied,
                local_code=list(report.local_code),
                local_exists=report.local_exists,
                global_code=list(report.global_code),
                global_exists=report.global_exists,
            )
        logger.info("Bound for %s: q >= %d (%s)", params.describe(), q, case)
        return VerdictReport(self.NAME, parameters, verdict)
