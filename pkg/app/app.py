"""
Application du laboratoire - Factory Pattern
"""
import logging
import os
import sys

from app.config import config
from app.extensions import init_logging, init_matplotlib, LOGGER_NAME
from app.cli.parser import UsageError, parse_cli
from app.services.experiment_service import ExperimentService

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class LabApp:
    """
    Application configurée : réglages d'environnement, logger
    et gestionnaires d'erreurs qui déterminent le code de sortie.
    """

    def __init__(self, config_name, settings):
        self.config_name = config_name
        self.settings = settings
        self.logger = logging.getLogger(LOGGER_NAME)
        self.error_handlers = []

    def errorhandler(self, exc_type):
        """Enregistre un gestionnaire ; le premier type correspondant l'emporte."""
        def decorator(handler):
            self.error_handlers.append((exc_type, handler))
            return handler
        return decorator

    def handle_error(self, error):
        for exc_type, handler in self.error_handlers:
            if isinstance(error, exc_type):
                return handler(error)
        raise error

    def run(self, argv=None):
        """Analyse les arguments, exécute la matrice de runs, retourne le code de sortie."""
        try:
            spec = parse_cli(argv, self.settings)
            if spec.log_level:
                self.logger.setLevel(spec.log_level)
            traces, bundle = ExperimentService.run(spec, self.settings)
        except SystemExit as exc:
            # --help
            return exc.code or EXIT_OK
        except Exception as exc:
            return self.handle_error(exc)

        self.logger.info(
            "%d runs terminés, %d fichiers écrits dans %s",
            len(traces), len(bundle.all_paths()), bundle.output_dir
        )
        return EXIT_OK

    def __repr__(self):
        return f'<LabApp {self.config_name}>'


def create_app(config_name=None):
    """
    Factory pour créer l'application.
    """
    if config_name is None:
        config_name = os.getenv('LAB_ENV', 'development')

    app = LabApp(config_name, config[config_name])

    # Initialiser les extensions
    register_extensions(app)

    # Enregistrer les error handlers
    register_error_handlers(app)

    return app


def register_extensions(app):
    """
    Initialise le logging et le rendu des graphiques.
    """
    init_logging(app.settings.LOG_LEVEL, app.settings.LOG_FORMAT)
    init_matplotlib(app.settings.SVG_HASHSALT)


def register_error_handlers(app):
    """
    Enregistre les gestionnaires d'erreurs globaux.
    """
    @app.errorhandler(UsageError)
    def usage_error(error):
        sys.stderr.write(error.usage)
        sys.stderr.write(f'erreur : {error}\n')
        return EXIT_USAGE

    @app.errorhandler(OSError)
    def io_error(error):
        app.logger.error("Erreur d'entrée/sortie : %s", error)
        return EXIT_RUNTIME

    @app.errorhandler(Exception)
    def runtime_error(error):
        app.logger.error("Erreur d'exécution : %s", error, exc_info=True)
        return EXIT_RUNTIME
