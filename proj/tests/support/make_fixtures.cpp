// Regenerates the committed fixture bundle. Usage: protokg-make-fixtures [dir]
// (defaults to the in-tree tests/fixtures directory).

#include "fixture_world.hpp"

#include <cstdio>

int main(int argc, char** argv) {
    const std::filesystem::path dir =
        argc > 1 ? std::filesystem::path(argv[1]) : protokg::testfix::committed_fixture_dir();
    protokg::testfix::write_fixture_bundle(dir);
    std::printf("fixture bundle written to %s\n", dir.c_str());
    return 0;
}
