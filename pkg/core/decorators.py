from functools import wraps

from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from .exceptions import CrossCheckError

INPUT_ERROR = 2
VERIFICATION_FAILURE = 1


def exit_codes(func):
    """Maps project exceptions raised by a command handler to exit codes.

    ValidationError and unreadable files exit with 2, CrossCheckError with 1.
    """

    @wraps(func)
    def wrapper(command, *args, **kwargs):
        try:
            return func(command, *args, **kwargs)
        except ValidationError as e:
            raise CommandError("; ".join(e.messages), returncode=INPUT_ERROR) from e
        except OSError as e:
            raise CommandError(str(e), returncode=INPUT_ERROR) from e
        except CrossCheckError as e:
            raise CommandError(str(e), returncode=VERIFICATION_FAILURE) from e

    return wrapper
