from django.core.management.base import CommandError

from cli.services import render_verification, run_verification
from core.decorators import VERIFICATION_FAILURE, exit_codes

from ._base import RealizationCommand


class Command(RealizationCommand):
    help = "Checks the structural identities on a realization; exits with 1 if any fails."

    @exit_codes
    def handle(self, *args, **options):
        results, notes = run_verification(self.load(options))
        self.emit(render_verification(results, notes), options)
        failed = [result.name for result in results if not result.passed]
        if failed:
            raise CommandError(f"{len(failed)} checks failed: {', '.join(failed)}", returncode=VERIFICATION_FAILURE)
