"""Infrastructure layer: result persistence."""
