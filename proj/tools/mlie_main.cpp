#include "mlie/cli.hpp"

int main(int argc, char** argv)
{
    return mlie::cli::run(argc, argv);
}
