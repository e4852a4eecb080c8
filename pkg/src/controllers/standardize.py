import argparse

from components.codes import standardize
from components.formats import CodeFile, VerdictReport
from controllers.interfaces import CommandControllerInterface
from exceptions import StandardizationError


class StandardizeController(CommandControllerInterface):

    NAME = "standardize"
    HELP = "Row-reduce an s = 1 generator to its block standard form"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("file", help="Generator matrix file")

    def run(self, args: argparse.Namespace) -> VerdictReport:
        document = CodeFile.load(args.file)
        params = document.params
        parameters = {"file": str(args.file), "code": params.describe()}

        try:
            form = standardize(document.matrix(), params)
        except StandardizationError as error:
            failure = error.failure
            return VerdictReport(
                self.NAME,
                parameters,
                {"ok": False},
                {
                    "kind": failure.kind.value,
                    "block": failure.block,
                    "columns": None if failure.witness is None else list(failure.witness),
                    "detail": failure.detail,
                },
            )

        output = CodeFile.from_matrix(form.generator(), params).dumps()
        return VerdictReport(
            self.NAME,
            parameters,
            {
                "ok": True,
                "last_block": form.last_block,
                "alphas": [list(group) for group in form.alphas],
                "x_last": form.x_last.to_ints(),
                "output": output,
            },
        )
