from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from .decorators import INPUT_ERROR, VERIFICATION_FAILURE, exit_codes
from .exceptions import CrossCheckError


class SettingsTests(SimpleTestCase):
    def test_only_shipped_languages(self):
        self.assertEqual([code for code, _ in settings.LANGUAGES], ["en"])
        self.assertEqual(list(settings.LOCALE_PATHS), [])


class ExitCodeTests(SimpleTestCase):
    def test_mapping(self):
        cases = [
            (ValidationError("bad input"), INPUT_ERROR),
            (FileNotFoundError("missing.json"), INPUT_ERROR),
            (CrossCheckError("sides differ"), VERIFICATION_FAILURE),
        ]
        for error, code in cases:
            with self.subTest(error=error):

                @exit_codes
                def handle(command):
                    raise error

                with self.assertRaises(CommandError) as ctx:
                    handle(None)
                self.assertEqual(ctx.exception.returncode, code)
