#include "excursion_kit/app.hpp"

int main(int argc, char** argv)
{
    return exkit::cli::run(argc, argv);
}
