from cli.services import render_info
from core.decorators import exit_codes

from ._base import RealizationCommand


class Command(RealizationCommand):
    help = "Prints d(∅), m(∅), the rank and essentiality of a realization."

    def add_command_arguments(self, parser):
        parser.add_argument("--all", action="store_true", help="Also print the table of all 2^n subsets.")

    @exit_codes
    def handle(self, *args, **options):
        self.emit(render_info(self.load(options), all_subsets=options["all"]), options)
