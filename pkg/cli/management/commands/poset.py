from cli.services import render_poset_dot, render_poset_json
from core.decorators import exit_codes
from torsion_poset.services import build_poset

from ._base import RealizationCommand


class Command(RealizationCommand):
    help = "Serializes the poset of torsions as JSON or graphviz DOT."

    def add_command_arguments(self, parser):
        parser.add_argument("--format", choices=["json", "dot"], default="json")

    @exit_codes
    def handle(self, *args, **options):
        poset = build_poset(self.load(options))
        render = render_poset_dot if options["format"] == "dot" else render_poset_json
        self.emit(render(poset), options)
