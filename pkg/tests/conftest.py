def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, note = results[n]
        terminalreporter.write_line(f"acceptance {n}: {'PASS' if ok else 'FAIL'} ({note})")
