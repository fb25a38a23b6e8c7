"""
Point d'entrée de la ligne de commande
"""


def main(argv=None):
    """Lance l'application et retourne le code de sortie (0, 1 ou 2)."""
    # Import local : app.app importe lui-même app.cli
    from app.app import create_app

    app = create_app()
    return app.run(argv)
