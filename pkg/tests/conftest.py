import hypothesis

hypothesis.settings.register_profile(
    "repo",
    max_examples=40,
    deadline=None,
    derandomize=True,
    print_blob=False,
)
hypothesis.settings.load_profile("repo")
