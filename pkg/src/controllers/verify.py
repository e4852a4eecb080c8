import argparse
import logging
from typing import Any, Dict, Optional, Tuple

from components.algebra import MatrixGF
from components.codes import (
    PmdsParams,
    classify_s1,
    mr_check,
    pmds_oracle,
    trivial_case_check,
)
from components.formats import CodeFile, VerdictReport
from controllers.interfaces import CommandControllerInterface

logger = logging.getLogger(__name__)

Section = Tuple[Dict[str, Any], Optional[Dict[str, Any]]]


def _as_list(values):
    return None if values is None else list(values)


class VerifyController(CommandControllerInterface):

    NAME = "verify"
    HELP = "Check whether a generator matrix file is PMDS"
    MODES = ("oracle", "classify", "both", "mr")

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("file", help="Generator matrix file")
        parser.add_argument("--mode", choices=self.MODES, default="oracle")

    def _oracle(self, generator: MatrixGF, params: PmdsParams) -> Section:
        verdict = pmds_oracle(generator, params)
        section = {"ok": verdict.is_pmds, "is_pmds": verdict.is_pmds}
        if params.k == params.ell:
            section["is_mds"] = trivial_case_check(generator, params).mds
        if verdict.is_pmds:
            return section, None
        report = verdict.report
        return section, {
            "stage": verdict.failing_stage.value,
            "block": verdict.block,
            "erased": _as_list(verdict.puncture),
            "columns": None if report is None else _as_list(report.witness),
            "detail": verdict.detail,
        }

    def _classify(self, generator: MatrixGF, params: PmdsParams) -> Section:
        verdict = classify_s1(generator, params)
        section = {"ok": verdict.is_pmds, "is_pmds": verdict.is_pmds}
        form = verdict.standard_form
        if form is not None:
            section["last_block"] = form.last_block
            section["alphas"] = [list(group) for group in form.alphas]
            section["all_alphas_one"] = form.all_alphas_one
        if verdict.failure is None:
            return section, None
        failure = verdict.failure
        return section, {
            "kind": failure.kind.value,
            "block": failure.block,
            "columns": _as_list(failure.witness),
            "detail": failure.detail,
        }

    def _mr(self, generator: MatrixGF, params: PmdsParams) -> Section:
        report = mr_check(generator, params)
        section = {
            "ok": report.holds,
            "is_mr": report.holds,
            "patterns_checked": report.patterns_checked,
        }
        if report.holds:
            return section, None
        return section, {
            "erased": list(report.counterexample.erased),
            "expected_correctable": report.expected_correctable,
        }

    def run(self, args: argparse.Namespace) -> VerdictReport:
        document = CodeFile.load(args.file)
        generator, params = document.matrix(), document.params
        parameters = {
            "file": str(args.file),
            "mode": args.mode,
            "code": params.describe(),
            "field": document.spec.literal,
        }

        if args.mode == "oracle":
            verdict, witness = self._oracle(generator, params)
        elif args.mode == "classify":
            verdict, witness = self._classify(generator, params)
        elif args.mode == "mr":
            verdict, witness = self._mr(generator, params)
        else:
            oracle, oracle_witness = self._oracle(generator, params)
            classify, classify_witness = self._classify(generator, params)
            agree = oracle["is_pmds"] == classify["is_pmds"]
            if not agree:
                logger.error("Oracle and classification disagree on %s", args.file)
            verdict = {
                "ok": agree and oracle["is_pmds"],
                "agree": agree,
                "is_pmds": oracle["is_pmds"],
                "classification": classify,
            }
            witness = None
            if oracle_witness or classify_witness:
                witness = {"oracle": oracle_witness, "classification": classify_witness}

        return VerdictReport(self.NAME, parameters, verdict, witness)
