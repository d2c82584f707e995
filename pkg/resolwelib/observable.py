""" Observable class """

import logging

logger = logging.getLogger(__name__)


class Observable:
    """Class to manage observables, the streaming stages use it to report each
    subgraph they consume"""

    def __init__(self):
        self._observers = []

    def watch(self, observer):
        """ Add an observer, called as observer(sender, event, detail) """
        self._observers.append(observer)

    def unwatch(self, observer):
        """ Remove an observer from this observable class """
        self._observers.remove(observer)

    def _on_change(self, sender, event, detail):
        """ Trigger the change notification for all observers """
        logger.debug("%s %s %s", sender, event, detail)
        for observer in self._observers:
            observer(sender, event, detail)

    @property
    def has_observers(self):
        return bool(self._observers)

    def __repr__(self):
        return f"{self.__class__.__name__} watched by={self._observers!r}"
