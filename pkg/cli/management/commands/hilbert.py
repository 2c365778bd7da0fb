from cli.services import render_hilbert
from core.decorators import exit_codes

from ._base import RealizationCommand


class Command(RealizationCommand):
    help = "Prints the Hilbert series of the face module."

    def add_command_arguments(self, parser):
        parser.add_argument("--dual", action="store_true", help="Use the dual realization.")

    @exit_codes
    def handle(self, *args, **options):
        self.emit(render_hilbert(self.load(options), dual=options["dual"]), options)
