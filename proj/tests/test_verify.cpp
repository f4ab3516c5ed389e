#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <boolfun/serialize.hpp>
#include <boolfun/verify.hpp>

using namespace boolfun;

namespace
{

TheoremVerdict run_on( const std::string& id, const TruthTable& t )
{
  FunctionProfile p( t );
  return run_checker( id, p );
}

} // namespace

TEST_CASE( "Theorem 3.2 instantiations" )
{
  const auto maj = run_on( "3.2", TruthTable::parse( "3:E8" ) );
  REQUIRE( maj.holds );
  REQUIRE( maj.lhs == 2 );   // bs
  REQUIRE( maj.rhs == 2 );   // (C_0 + 1) * s, alt = 1
  REQUIRE( maj.slack == 0 );

  const auto xo = run_on( "3.2", TruthTable::parse( "2:6" ) );
  REQUIRE( xo.holds );
  REQUIRE( xo.lhs == 2 );
  REQUIRE( xo.rhs == 6 );    // C_1 = 3, s = 2
  REQUIRE( xo.note.find( "C_t=3" ) != std::string::npos );

  const auto zero = run_on( "3.2", TruthTable( 3 ) );
  REQUIRE( zero.holds );
  REQUIRE( zero.lhs == 0 );
  REQUIRE( zero.rhs == 0 );
}

TEST_CASE( "Theorem 1.1 uses the explicit constants" )
{
  const auto parity3 = run_on( "1.1", make_parity( 3 ) );
  REQUIRE( parity3.holds );
  REQUIRE( parity3.lhs == 3 );   // bs
  REQUIRE( parity3.rhs == 12 );  // (C_1 + 1) * s = 4 * 3

  const auto mono = run_on( "1.1", make_majority( 3 ) );
  REQUIRE( mono.rhs == 2 ); // bound collapses to s for monotone functions
  REQUIRE( mono.lhs == 2 );
}

TEST_CASE( "fact checkers" )
{
  const auto f21 = run_on( "2.1", make_parity( 3 ) );
  REQUIRE( f21.holds ); // |f^-1(1)| = 4 even and deg2 = 1 < 3

  const auto f22skip = run_on( "2.2", TruthTable( 3 ) );
  REQUIRE_FALSE( f22skip.applicable ); // constant 0 excluded

  const auto f22one = run_on( "2.2", negate_output( TruthTable( 3 ) ) );
  REQUIRE( f22one.applicable );
  REQUIRE( f22one.holds ); // deg2 = 0 <= log 1 = 0

  const auto f24 = run_on( "2.4", make_and( 3 ) );
  REQUIRE( f24.applicable );
  REQUIRE( f24.holds );
  REQUIRE( f24.note == "s=3 bs=3 C=3" );

  REQUIRE_FALSE( run_on( "2.4", make_parity( 2 ) ).applicable );
  REQUIRE_FALSE( run_on( "2.5", make_parity( 2 ) ).applicable );
  REQUIRE( run_on( "2.5", make_majority( 3 ) ).holds );
}

TEST_CASE( "Lemma 3.1 and the dt bounds" )
{
  const auto l31 = run_on( "3.1", TruthTable::parse( "2:6" ) );
  REQUIRE( l31.holds );
  REQUIRE( l31.lhs == 2 );          // C at both ends is 2
  REQUIRE( l31.rhs == 2 );          // min(alt*s, alt*deg2) = min(4, 2)

  REQUIRE( run_on( "4.1", negate_output( TruthTable( 2 ) ) ).holds ); // 0 <= 0
  const auto t41 = run_on( "4.1", TruthTable::parse( "2:6" ) );
  REQUIRE( t41.lhs == 2 );
  REQUIRE( t41.rhs == 2 ); // alt * deg2^2 = 2, tight
  const auto c42 = run_on( "4.2", TruthTable::parse( "2:6" ) );
  REQUIRE( c42.rhs == 4 ); // alt * s * deg2

  const auto t23 = run_on( "2.3", TruthTable::parse( "2:6" ) );
  REQUIRE( t23.holds );
  REQUIRE( t23.lhs == 2 ); // constructed tree depth
  REQUIRE( t23.rhs == 2 ); // Cmin^cl * deg2
}

TEST_CASE( "Theorem 1.2 chain" )
{
  const auto maj = run_on( "1.2", TruthTable::parse( "3:E8" ) );
  REQUIRE( maj.holds );
  REQUIRE( maj.lhs == 6 ); // 2 dt
  REQUIRE( maj.note == "2*alt*deg2^2=8" );
  REQUIRE( maj.rhs == Catch::Approx( 2.0 * std::log2( 5.0 ) * std::log2( 5.0 ) ) );

  REQUIRE_FALSE( run_on( "1.2", TruthTable( 2 ) ).applicable );
  REQUIRE( run_on( "1.2", negate_output( TruthTable( 2 ) ) ).holds );
}

TEST_CASE( "check_all covers every theorem in order" )
{
  const auto verdicts = check_all( TruthTable::parse( "3:E8" ) );
  REQUIRE( verdicts.size() == all_theorem_ids().size() );
  for ( std::size_t i = 0; i < verdicts.size(); ++i )
  {
    REQUIRE( verdicts[i].id == all_theorem_ids()[i] );
    REQUIRE( ( !verdicts[i].applicable || verdicts[i].holds ) );
  }
}

TEST_CASE( "sweeps over small exhaustive spaces hold everywhere" )
{
  const auto r0 = sweep( SweepSpace::exhaustive( 0 ) );
  REQUIRE( r0.functions == 2 );
  REQUIRE( r0.ok() );

  const auto r2 = sweep( SweepSpace::exhaustive( 2 ) );
  REQUIRE( r2.functions == 16 );
  REQUIRE( r2.ok() );
  for ( const auto& st : r2.per_theorem )
  {
    REQUIRE( st.violations == 0 );
    REQUIRE( st.checked == st.holds );
  }
  REQUIRE_THROWS_AS( SweepSpace::exhaustive( 5 ), cap_exceeded );
  REQUIRE_THROWS_AS( sweep( SweepSpace::exhaustive( 1 ), { "9.9" } ), parse_error );
}

TEST_CASE( "sweep results are byte-identical across parallelism levels" )
{
  const auto a = sweep( SweepSpace::exhaustive( 3 ), {}, 1 );
  const auto b = sweep( SweepSpace::exhaustive( 3 ), {}, 4 );
  const auto c = sweep( SweepSpace::exhaustive( 3 ), {}, 7 );
  REQUIRE( to_json( a ).dump() == to_json( b ).dump() );
  REQUIRE( to_json( a ).dump() == to_json( c ).dump() );
  REQUIRE( to_csv( a ) == to_csv( b ) );
}

TEST_CASE( "tightness witnesses over a family list" )
{
  const auto r = sweep( SweepSpace::from_list( { "family:parity(n=1)", "family:parity(n=2)", "family:parity(n=3)", "family:parity(n=4)" } ),
                        { "3.2" }, 2 );
  REQUIRE( r.functions == 4 );
  REQUIRE( r.ok() );
  REQUIRE( r.per_theorem[0].ratio_num == r.per_theorem[0].ratio_den ); // ratio 1.0
  REQUIRE( r.per_theorem[0].witness == "family:parity(n=1)" );
}

TEST_CASE( "monotone 4-ary functions number 168" )
{
  // Facts 2.4/2.5 apply exactly to the monotone functions
  const auto r = sweep( SweepSpace::exhaustive( 4 ), { "2.4", "2.5" } );
  REQUIRE( r.ok() );
  REQUIRE( r.per_theorem[0].checked == 168 );
  REQUIRE( r.per_theorem[1].checked == 168 );
}
