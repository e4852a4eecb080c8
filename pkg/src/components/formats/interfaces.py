from abc import ABCMeta, abstractmethod


class DocumentInterface(metaclass=ABCMeta):

    def __init__(self):
        self._is_validated = False

    @property
    def is_validated(self):
        return self._is_validated

    @abstractmethod
    def validate(self):
        self._is_validated = True

    @abstractmethod
    def dumps(self) -> str:
        pass

    def __str__(self) -> str:
        return self.dumps()
