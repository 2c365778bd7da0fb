from cli.services import render_tutte
from core.decorators import exit_codes

from ._base import RealizationCommand


class Command(RealizationCommand):
    help = "Prints the arithmetic Tutte polynomial."

    def add_command_arguments(self, parser):
        parser.add_argument("--dual", action="store_true", help="Print the polynomial of the dual instead.")

    @exit_codes
    def handle(self, *args, **options):
        self.emit(render_tutte(self.load(options), dual=options["dual"]), options)
