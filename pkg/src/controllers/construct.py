import argparse
import logging

from components.algebra import parse_field_literal
from components.codes import (
    PmdsParams,
    build_ell1_general_s,
    build_s1,
    minimal_ell1_field,
    minimal_s1_field,
)
from components.formats import CodeFile, VerdictReport
from controllers.interfaces import CommandControllerInterface
from exceptions import ParameterError
from utils import parse_int_list

logger = logging.getLogger(__name__)


class ConstructController(CommandControllerInterface):

    NAME = "construct"
    HELP = "Build a PMDS generator matrix"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--m", type=int, required=True, help="Number of blocks")
        parser.add_argument("--l", dest="ell", type=int, required=True, help="Locality")
        parser.add_argument(
            "--r", type=parse_int_list, required=True, help="Local redundancies, e.g. 1,2"
        )
        parser.add_argument("--s", type=int, default=1, help="Global parities (default 1)")
        parser.add_argument(
            "--field",
            type=parse_field_literal,
            default=None,
            help="Field literal such as gf(7) or gf(2^3); minimal admissible by default",
        )

    def run(self, args: argparse.Namespace) -> VerdictReport:
        params = PmdsParams.with_s(args.m, args.ell, args.r, args.s)

        if params.s == 1:
            spec = args.field or minimal_s1_field(params)
            generator = build_s1(params, spec)
        elif params.ell == 1:
            spec = args.field or minimal_ell1_field(params.m, params.s)
            generator = build_ell1_general_s(params.m, params.s, params.r, spec)
        else:
            raise ParameterError(
                f"No construction for l = {params.ell} with s = {params.s}; "
                "general s is only built for l = 1"
            )

        logger.info("Built %s over %s", params.describe(), spec.literal)
        document = CodeFile.from_matrix(generator, params)
        return VerdictReport(
            self.NAME,
            {"code": params.describe(), "field": spec.literal, "s": params.s},
            {"ok": True, "output": document.dumps()},
        )
