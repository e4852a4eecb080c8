import argparse
import logging

from components.algebra import MatrixGF
from components.codes import (
    PmdsDecoder,
    PmdsParams,
    ReceivedWord,
    decode_generic,
    encode,
)
from components.formats import CodeFile, VerdictReport, format_word, load_word
from controllers.interfaces import CommandControllerInterface
from exceptions import DecodeError, ParameterError, StandardizationError, UncorrectableError
from utils import parse_int_list

logger = logging.getLogger(__name__)


class DecodeController(CommandControllerInterface):

    NAME = "decode"
    HELP = "Recover the erased symbols of a received word"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("file", help="Generator matrix file")
        parser.add_argument("word", help="Received word file, '?' for erasures")

    def _decode(self, generator: MatrixGF, params: PmdsParams, word: ReceivedWord):
        if params.s == 1 and params.m >= 2:
            try:
                decoder = PmdsDecoder(generator, params)
            except (DecodeError, StandardizationError, ParameterError) as error:
                logger.info("Structured decoder unavailable (%s); decoding generically", error)
            else:
                return decoder.decode(word)
        return decode_generic(generator, word)

    def run(self, args: argparse.Namespace) -> VerdictReport:
        document = CodeFile.load(args.file)
        generator, params = document.matrix(), document.params
        word = load_word(args.word, document.spec, params.n)
        parameters = {
            "file": str(args.file),
            "word": str(args.word),
            "code": params.describe(),
            "field": document.spec.literal,
            "erased": list(word.pattern.erased),
        }

        try:
            result = self._decode(generator, params, word)
        except UncorrectableError as error:
            return VerdictReport(
                self.NAME,
                parameters,
                {"ok": False, "correctable": False},
                {"deficit": error.deficit, "detail": str(error)},
            )
        except DecodeError as error:
            return VerdictReport(
                self.NAME,
                parameters,
                {"ok": False, "correctable": True, "consistent": False},
                {"detail": str(error)},
            )

        return VerdictReport(
            self.NAME,
            parameters,
            {
                "ok": True,
                "codeword": list(result.codeword),
                "global_row_used": result.global_row_used,
                "overflow_block": result.overflow_block,
                "multiplications": result.multiplications,
                "syndrome_multiplications": result.syndrome_multiplications,
                "output": format_word(result.codeword),
            },
        )


class EncodeController(CommandControllerInterface):

    NAME = "encode"
    HELP = "Multiply a message by the generator matrix"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("file", help="Generator matrix file")
        parser.add_argument(
            "--message", type=parse_int_list, required=True, help="Message symbols, e.g. 1,1,1"
        )

    def run(self, args: argparse.Namespace) -> VerdictReport:
        document = CodeFile.load(args.file)
        codeword = encode(document.matrix(), args.message)
        return VerdictReport(
            self.NAME,
            {"file": str(args.file), "message": list(args.message)},
            {"ok": True, "codeword": list(codeword), "output": format_word(codeword)},
        )
