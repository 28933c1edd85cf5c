"""Repository layer for golden table storage."""
