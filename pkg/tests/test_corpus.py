import os
import subprocess

import httpx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixture_corpus import MANIFEST
from gitrepo import GitRepo
from guifrag.corpus import (
    NO_MANIFEST,
    TOO_FEW_RELEASES,
    CorpusFilter,
    FixtureIndex,
    GitHubSearch,
    RepoRef,
    discover,
    fetch,
    passes_filter,
)
from guifrag.errors import (
    ApiUnreachable,
    CacheDirUnwritable,
    CloneFailed,
    InvalidQuery,
    MalformedResponse,
    RateLimited,
    RepoUnreadable,
)
from guifrag.history import list_releases


def write_index(d, entries):
    d.mkdir()
    for i, (rid, desc) in enumerate(entries):
        (d / f"{i}.meta").write_text(f"id={rid}\ndescription={desc}\nclone_url=../repos/{i}\n")
    return d


def test_fixture_index_matches_grep(tmp_path):
    index = write_index(tmp_path / "idx", [
        ("acme/notes", "Simple Android notes"),
        ("acme/cli", "Command line tool"),
        ("acme/maps", "maps for ANDROID phones"),
    ])
    grep = subprocess.run(["grep", "-li", "android", *sorted(map(str, index.iterdir()))],
                          capture_output=True, text=True).stdout.split()
    hits = discover("Android", 1, FixtureIndex(index))
    assert len(hits) == len(grep) == 2
    assert [h.host_id for h in hits] == ["acme/maps", "acme/notes"]
    assert hits[0].clone_url == str((index / "../repos/2").resolve())


def test_discover_rejects_empty_query(tmp_path):
    with pytest.raises(InvalidQuery):
        discover("  ", 1, FixtureIndex(tmp_path))


def test_discover_dedups_and_sorts():
    class Dupes:
        def search(self, q, n):
            return [RepoRef("b/x", "u1"), RepoRef("a/y", "u2"), RepoRef("b/x", "u3")]

    hits = discover("Android", 1, Dupes())
    assert [(h.host_id, h.clone_url) for h in hits] == [("a/y", "u2"), ("b/x", "u1")]


def test_malformed_index_entry(tmp_path):
    (tmp_path / "bad.meta").write_text("description=Android\n")
    with pytest.raises(MalformedResponse):
        discover("Android", 1, FixtureIndex(tmp_path))


def github(handler, per_page=2):
    client = httpx.Client(base_url="https://api.test", transport=httpx.MockTransport(handler))
    return GitHubSearch(token="t0k", client=client, per_page=per_page)


def item(i):
    return {"full_name": f"o/r{i}", "clone_url": f"https://x/o/r{i}.git", "description": None}


def test_github_paging_and_query():
    seen = []

    def handler(request):
        seen.append(request)
        page = int(request.url.params["page"])
        items = [item(1), item(2)] if page == 1 else [item(3)]
        return httpx.Response(200, json={"items": items})

    hits = discover("Android", 5, github(handler))
    assert [h.host_id for h in hits] == ["o/r1", "o/r2", "o/r3"]
    assert len(seen) == 2  # short second page stops paging
    assert seen[0].url.params["q"] == "Android in:name,description,readme"
    assert seen[0].headers["authorization"] == "Bearer t0k"


def test_github_page_limit():
    calls = []

    def handler(request):
        calls.append(1)
        return httpx.Response(200, json={"items": [item(len(calls) * 2), item(len(calls) * 2 + 1)]})

    assert len(discover("Android", 1, github(handler))) == 2
    assert len(calls) == 1


@pytest.mark.parametrize(
    "response, error",
    [
        (httpx.Response(429, headers={"retry-after": "7"}), RateLimited),
        (httpx.Response(403, headers={"x-ratelimit-remaining": "0"}), RateLimited),
        (httpx.Response(502), ApiUnreachable),
        (httpx.Response(200, text="not json"), MalformedResponse),
        (httpx.Response(200, json={"total": 1}), MalformedResponse),
        (httpx.Response(422, json={"message": "bad"}), MalformedResponse),
    ],
)
def test_github_errors(response, error):
    with pytest.raises(error) as exc:
        discover("Android", 1, github(lambda req: response))
    if error is RateLimited and "retry-after" in response.headers:
        assert exc.value.retry_after == 7.0


def test_github_unreachable():
    def handler(request):
        raise httpx.ConnectError("down")

    with pytest.raises(ApiUnreachable) as exc:
        discover("Android", 1, github(handler))
    assert exc.value.retryable


def make_repo(path, tags, manifest=True, extra_head=True):
    r = GitRepo(path)
    if manifest:
        r.write("app/src/main/AndroidManifest.xml", MANIFEST)
    r.write("A.java", "class A {}\n")
    r.commit("init", 100)
    for k in range(tags):
        r.write("A.java", f"class A {{ int v{k}; }}\n")
        r.commit(f"c{k}", 200 + k)
        r.tag(f"v{k}")
    if extra_head:
        r.write("A.java", "class A { int head; }\n")
        r.commit("head", 1000)
    return r


def test_fetch_clones_and_is_idempotent(tmp_path):
    src = make_repo(tmp_path / "src", 2)
    ref = RepoRef("o/src", str(src.path))
    got = fetch(ref, tmp_path / "cache")
    assert got.local_path == tmp_path / "cache" / "o__src"
    assert [r.name for r in list_releases(got.local_path)] == ["v0", "v1", "master"]
    marker = got.local_path / "marker"
    marker.write_text("x")
    again = fetch(ref, tmp_path / "cache")
    assert again.local_path == got.local_path
    assert marker.exists()  # no re-download


def test_fetch_refresh_picks_up_new_tags(tmp_path):
    src = make_repo(tmp_path / "src", 1)
    ref = RepoRef("o/src", str(src.path))
    fetch(ref, tmp_path / "cache")
    src.tag("late")
    assert "late" not in [r.name for r in list_releases(fetch(ref, tmp_path / "cache").local_path)]
    assert "late" in [r.name for r in list_releases(fetch(ref, tmp_path / "cache", refresh=True).local_path)]


def test_fetch_unreachable(tmp_path):
    with pytest.raises(CloneFailed):
        fetch(RepoRef("o/none", str(tmp_path / "missing")), tmp_path / "cache")
    assert not (tmp_path / "cache" / "o__none").exists()


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
def test_cache_unwritable(tmp_path):
    ro = tmp_path / "ro"
    ro.mkdir()
    ro.chmod(0o500)
    with pytest.raises(CacheDirUnwritable):
        fetch(RepoRef("o/x", "nowhere"), ro)


def test_cache_path_is_a_file(tmp_path):
    (tmp_path / "f").write_text("")
    with pytest.raises(CacheDirUnwritable):
        fetch(RepoRef("o/x", "nowhere"), tmp_path / "f")


def fetched(tmp_path, name, **kw):
    r = make_repo(tmp_path / name, **kw)
    return fetch(RepoRef(f"o/{name}", str(r.path)), tmp_path / "cache")


def test_filter_examples(tmp_path):
    filt = CorpusFilter()
    assert passes_filter(fetched(tmp_path, "one", tags=1), filt) == (True, None)
    assert passes_filter(fetched(tmp_path, "none", tags=0), filt) == (False, TOO_FEW_RELEASES)
    assert passes_filter(fetched(tmp_path, "lib", tags=3, manifest=False), filt) == (False, NO_MANIFEST)
    assert passes_filter(fetched(tmp_path, "lib2", tags=3, manifest=False), CorpusFilter(require_manifest=False))[0]


def test_filter_needs_fetched_repo():
    with pytest.raises(RepoUnreadable):
        passes_filter(RepoRef("o/x", "u"), CorpusFilter())
    with pytest.raises(ValueError):
        CorpusFilter(min_releases=1)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 3), st.booleans(), st.booleans(), st.integers(2, 4))
def test_filter_monotone_in_tags(tmp_path_factory, tags, manifest, extra_head, min_rel):
    base = tmp_path_factory.mktemp("mono")
    r = make_repo(base / "r", tags, manifest, extra_head)
    filt = CorpusFilter(min_releases=min_rel)
    ref = RepoRef("o/r", str(r.path), local_path=r.path)
    before, _ = passes_filter(ref, filt)
    r.tag("zz-head")
    if tags or extra_head:
        r.tag("older", at="HEAD~1")
    after, _ = passes_filter(ref, filt)
    assert not (before and not after)


def test_fixture_corpus_pipeline(corpus, tmp_path):
    from fixture_corpus import ANALYZED

    _, index = corpus
    accepted = []
    for ref in discover("Android", 1, FixtureIndex(index)):
        try:
            local = fetch(ref, tmp_path / "cache")
        except CloneFailed:
            continue
        if passes_filter(local, CorpusFilter())[0]:
            accepted.append(ref.host_id)
    assert tuple(accepted) == ANALYZED
