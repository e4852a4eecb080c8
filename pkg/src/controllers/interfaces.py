import argparse
from abc import ABCMeta, abstractmethod

from components.formats import VerdictReport


class CommandControllerInterface(metaclass=ABCMeta):

    NAME = ""
    HELP = ""

    def __init__(self):
        self._parser = None

    @property
    def parser(self) -> argparse.ArgumentParser:
        return self._parser

    def register(self, subparsers) -> argparse.ArgumentParser:
        self._parser = subparsers.add_parser(self.NAME, help=self.HELP)
        self._parser.set_defaults(controller=self)
        self.add_arguments(self._parser)
        return self._parser

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser):
        pass

    @abstractmethod
    def run(self, args: argparse.Namespace) -> VerdictReport:
        """Execute the command. ``verdict["output"]``, when present, is the
        artifact printed in text mode."""
