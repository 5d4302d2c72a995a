#include <iostream>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::cerr << "cobar: command-line surface not wired yet\n";
    return 2;
}
