from src.providers.random_provider import RandomSourceInterface
from src.providers.numpy_random_provider import NumpyRandomSource
