#include <iostream>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::cerr << "padic-uhp: not wired yet\n";
    return 2;
}
