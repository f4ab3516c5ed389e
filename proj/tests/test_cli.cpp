// Exercises the installed CLI binary through its documented exit-code and
// JSON contracts.  The test runner passes the binary path in BOOLFUN_CLI.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <boolfun/serialize.hpp>

namespace
{

struct RunResult
{
  int exit_code = -1;
  std::string out;
};

RunResult run_cli( const std::string& args )
{
  const char* bin = std::getenv( "BOOLFUN_CLI" );
  REQUIRE( bin != nullptr );
  const std::string cmd = std::string( bin ) + " " + args + " 2>/dev/null";
  FILE* pipe = popen( cmd.c_str(), "r" );
  REQUIRE( pipe != nullptr );
  RunResult res;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ( ( got = fread( buf.data(), 1, buf.size(), pipe ) ) > 0 )
  {
    res.out.append( buf.data(), got );
  }
  const int status = pclose( pipe );
  res.exit_code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
  return res;
}

} // namespace

TEST_CASE( "measure subcommand emits the JSON contract" )
{
  const auto r = run_cli( "measure 3:E8 --format json" );
  REQUIRE( r.exit_code == 0 );
  const auto doc = boolfun::json::parse( r.out );
  REQUIRE( doc["schema_version"] == 1 );
  REQUIRE( doc["measures"]["sensitivity"]["value"] == 2 );
  REQUIRE( doc["measures"]["dt_depth"] == 3 );

  const auto family = run_cli( "measure 'family:parity(n=2)' --format json" );
  REQUIRE( family.exit_code == 0 );
  const auto fdoc = boolfun::json::parse( family.out );
  REQUIRE( fdoc["measures"]["alt"]["value"] == 2 );
  REQUIRE( fdoc["spectra"]["deg2"] == 1 );
  REQUIRE( fdoc["spectra"]["fourier_sparsity"] == 2 );

  const auto zero = run_cli( "measure 0:0 --format json" );
  REQUIRE( zero.exit_code == 0 );
  REQUIRE( boolfun::json::parse( zero.out )["measures"]["dt_depth"] == 0 );
}

TEST_CASE( "verify subcommand exit codes and determinism" )
{
  const auto r = run_cli( "verify exhaustive:2 --all --format json" );
  REQUIRE( r.exit_code == 0 );
  const auto doc = boolfun::json::parse( r.out );
  REQUIRE( doc["functions"] == 16 );
  REQUIRE( doc["violation_count"] == 0 );

  const auto one_thm = run_cli( "verify 'family:with_alt(n=5,a=3)#42' --thm 3.2 --format json" );
  REQUIRE( one_thm.exit_code == 0 );
  const auto tdoc = boolfun::json::parse( one_thm.out );
  REQUIRE( tdoc["per_theorem"].size() == 1 );
  REQUIRE( tdoc["per_theorem"][0]["id"] == "3.2" );

  const auto j1 = run_cli( "verify exhaustive:2 --all --format json --jobs 1" );
  const auto j4 = run_cli( "verify exhaustive:2 --all --format json --jobs 4" );
  REQUIRE( j1.out == j4.out );
}

TEST_CASE( "comm subcommand" )
{
  const auto r = run_cli( "comm 2:E --and --format json" );
  REQUIRE( r.exit_code == 0 );
  const auto doc = boolfun::json::parse( r.out );
  REQUIRE( doc["rank_identities"]["and_rank"] == 3 );
  REQUIRE( doc["and"]["minterm_cover"]["size"] == 2 );

  const auto x = run_cli( "comm 2:6 --xor --format json" );
  REQUIRE( x.exit_code == 0 );
  const auto xdoc = boolfun::json::parse( x.out );
  REQUIRE( xdoc["rank_identities"]["xor_rank"] == 2 );
  REQUIRE( xdoc["rank_identities"]["fourier_sparsity"] == 2 );

  const auto z = run_cli( "comm 1:0 --and --format json" );
  REQUIRE( z.exit_code == 0 );
  REQUIRE( boolfun::json::parse( z.out )["and"]["rank"] == 0 );
}

TEST_CASE( "usage and cap errors map to exit codes 2 and 3" )
{
  REQUIRE( run_cli( "measure not-a-spec" ).exit_code == 2 );
  REQUIRE( run_cli( "measure 3:ZZ" ).exit_code == 2 );
  REQUIRE( run_cli( "verify exhaustive:9" ).exit_code == 3 );
  REQUIRE( run_cli( "measure 'family:parity(n=13)'" ).exit_code == 3 );
  REQUIRE( run_cli( "bogus-subcommand" ).exit_code == 2 );
  REQUIRE( run_cli( "verify exhaustive:2 --thm 9.9" ).exit_code == 2 );
}

TEST_CASE( "text and csv formats render" )
{
  const auto text = run_cli( "measure 3:E8" );
  REQUIRE( text.exit_code == 0 );
  REQUIRE( text.out.find( "s    = 2" ) != std::string::npos );
  REQUIRE( text.out.find( "theorems:" ) != std::string::npos );

  const auto csv = run_cli( "verify exhaustive:2 --format csv" );
  REQUIRE( csv.exit_code == 0 );
  REQUIRE( csv.out.rfind( "theorem,checked", 0 ) == 0 );
}

TEST_CASE( "environment variables configure defaults, flags win" )
{
  const char* bin = std::getenv( "BOOLFUN_CLI" );
  REQUIRE( bin != nullptr );
  FILE* pipe = popen( ( std::string( "BOOLFUN_FORMAT=json " ) + bin + " measure 3:E8 2>/dev/null" ).c_str(), "r" );
  REQUIRE( pipe != nullptr );
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ( ( got = fread( buf.data(), 1, buf.size(), pipe ) ) > 0 )
  {
    out.append( buf.data(), got );
  }
  REQUIRE( WEXITSTATUS( pclose( pipe ) ) == 0 );
  REQUIRE( boolfun::json::parse( out )["schema_version"] == 1 );

  // an explicit flag overrides the environment
  FILE* pipe2 = popen( ( std::string( "BOOLFUN_FORMAT=json " ) + bin + " measure 3:E8 --format text 2>/dev/null" ).c_str(), "r" );
  REQUIRE( pipe2 != nullptr );
  std::string out2;
  while ( ( got = fread( buf.data(), 1, buf.size(), pipe2 ) ) > 0 )
  {
    out2.append( buf.data(), got );
  }
  REQUIRE( WEXITSTATUS( pclose( pipe2 ) ) == 0 );
  REQUIRE( out2.find( "theorems:" ) != std::string::npos );
}
