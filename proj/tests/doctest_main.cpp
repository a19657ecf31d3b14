#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "frob/parallel.hpp"

int main(int argc, char** argv) {
    frob::configure_threads_from_env();
    return doctest::Context(argc, argv).run();
}
