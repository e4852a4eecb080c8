from controllers.construct import ConstructController
from controllers.decode import DecodeController, EncodeController
from controllers.interfaces import CommandControllerInterface
from controllers.search import BoundsController, SearchController
from controllers.standardize import StandardizeController
from controllers.verify import VerifyController

__all__ = [
    "BoundsController",
    "CommandControllerInterface",
    "ConstructController",
    "DecodeController",
    "EncodeController",
    "SearchController",
    "StandardizeController",
    "VerifyController",
]
