"""Domain error hierarchy shared by all textaug modules.

Every error the CLI reports maps to exit code 1 with a line of the form
``ERROR <code>: <detail>`` on stderr, where ``<code>`` is the class name.
"""


class TextaugError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__
