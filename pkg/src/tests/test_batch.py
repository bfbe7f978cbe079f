import pytest

from src.providers.numpy_random_provider import NumpyRandomSource


def _draw(source):
    return source.integers(0, 1_000_000)


@pytest.mark.asyncio
async def test_batch_returns_results_in_trial_order(batch_runner):
    results = await batch_runner.run(_draw, seed=11, count=8)

    expected = [child.integers(0, 1_000_000) for child in NumpyRandomSource(11).spawn(8)]
    assert results == expected


@pytest.mark.asyncio
async def test_batch_is_reproducible(batch_runner):
    first = await batch_runner.run(_draw, seed=5, count=4)
    second = await batch_runner.run(_draw, seed=5, count=4)

    assert first == second
    assert len(set(first)) > 1


@pytest.mark.asyncio
async def test_batch_rejects_empty_run(batch_runner):
    with pytest.raises(ValueError):
        await batch_runner.run(_draw, seed=0, count=0)


def test_run_sync(batch_runner):
    from_sync = batch_runner.run_sync(_draw, seed=3, count=3)

    assert len(from_sync) == 3
    assert from_sync == batch_runner.run_sync(_draw, seed=3, count=3)
