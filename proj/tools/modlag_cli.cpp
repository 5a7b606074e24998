// SPDX-License-Identifier: MIT
// Command line front end (placeholder while the library is under way).

#include <cstdio>

int main() {
    std::puts("modlag: not wired up yet");
    return 1;
}
