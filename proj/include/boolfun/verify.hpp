/*!
  \file verify.hpp
  \brief Theorem checkers and the sweep engine.

  Each checker evaluates one inequality or identity on one function and
  returns a TheoremVerdict; sweeps fan the checkers out over a function space
  and aggregate order-independently, so results are identical at every
  parallelism level.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "comm.hpp"
#include "extremal.hpp"
#include "families.hpp"
#include "measures.hpp"
#include "spectra.hpp"
#include "truth_table.hpp"

namespace boolfun
{

/*! One instantiated theorem on one function.  For inequalities holds means
  lhs <= rhs; facts and identities report slack 0.  Ratio fields carry the
  exact tightness fraction when one is defined. */
struct TheoremVerdict
{
  std::string id;
  bool applicable = true;
  bool holds = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::int64_t ratio_num = 0;
  std::int64_t ratio_den = 0; // 0: no tightness ratio tracked
  std::string note;
};

/*! Lazily computed measure bundle shared by the checkers; lazy so that a
  filtered sweep never trips the cap of a measure it does not need. */
class FunctionProfile
{
public:
  explicit FunctionProfile( TruthTable t, Caps caps = {} ) : t_( std::move( t ) ), caps_( caps ) {}

  const TruthTable& table() const { return t_; }
  int n() const { return t_.arity(); }
  std::string label() const { return t_.format(); }

  int s() { return cache( s_, [&] { return sensitivity( t_ ).value; } ); }
  int bs() { return cache( bs_, [&] { return block_sensitivity( t_, caps_.block_sensitivity ).value; } ); }
  int cert() { return cache( cert_, [&] { return certificate( t_, caps_.certificate ).value; } ); }
  int c_zero() { return cache( c_zero_, [&] { return certificate_at( t_, 0, caps_.certificate ).value; } ); }
  int c_one() { return cache( c_one_, [&] { return certificate_at( t_, point_mask( n() ), caps_.certificate ).value; } ); }
  int cmin_value() { return cache( cmin_, [&] { return cmin( t_, caps_.certificate ).value; } ); }
  int cmin_cl() { return cache( cmincl_, [&] { return cmin_closure( t_, caps_.cmin_closure ).value; } ); }
  int dt() { return cache( dt_, [&] { return dt_depth( t_, caps_.decision_tree ); } ); }
  int alt() { return cache( alt_, [&] { return boolfun::alt( t_ ).value; } ); }
  int deg2() { return cache( deg2_, [&] { return boolfun::deg2( t_ ); } ); }
  std::int64_t fs() { return cache( fs_, [&] { return std::int64_t( fourier_sparsity( t_ ) ); } ); }
  std::int64_t mono() { return cache( mono_, [&] { return std::int64_t( mono_sparsity( t_ ) ); } ); }
  bool monotone() { return cache( monotone_, [&] { return is_monotone( t_ ); } ); }

  int greedy_depth()
  {
    build_greedy();
    return greedy_depth_;
  }

  bool greedy_correct()
  {
    build_greedy();
    return greedy_ok_;
  }

private:
  template<typename T, typename F>
  T cache( std::optional<T>& slot, F&& f )
  {
    if ( !slot )
    {
      slot = f();
    }
    return *slot;
  }

  void build_greedy()
  {
    if ( greedy_depth_ >= 0 )
    {
      return;
    }
    const DecisionTree tree = build_dt_via_min_certificates( t_, caps_.decision_tree );
    greedy_depth_ = tree.depth();
    greedy_ok_ = true;
    for ( Point x = 0; x < Point( t_.size() ); ++x )
    {
      if ( tree.evaluate( x ) != t_.get( x ) )
      {
        greedy_ok_ = false;
        break;
      }
    }
  }

  TruthTable t_;
  Caps caps_;
  std::optional<int> s_, bs_, cert_, c_zero_, c_one_, cmin_, cmincl_, dt_, alt_, deg2_;
  std::optional<std::int64_t> fs_, mono_;
  std::optional<bool> monotone_;
  int greedy_depth_ = -1;
  bool greedy_ok_ = false;
};

namespace detail
{

inline TheoremVerdict inequality( std::string id, std::int64_t lhs, std::int64_t rhs, std::string note = {} )
{
  TheoremVerdict v;
  v.id = std::move( id );
  v.lhs = double( lhs );
  v.rhs = double( rhs );
  v.slack = double( rhs - lhs );
  v.holds = lhs <= rhs;
  if ( rhs > 0 )
  {
    v.ratio_num = lhs;
    v.ratio_den = rhs;
  }
  v.note = std::move( note );
  return v;
}

/*! The explicit constant of the block sensitivity bound: C_t = t(t+5)/2. */
inline std::int64_t bs_constant( int t )
{
  return std::int64_t( t ) * ( t + 5 ) / 2;
}

inline std::int64_t alt_sen_bound( int alt, int s )
{
  const int t = alt / 2;
  return ( bs_constant( t ) + ( alt % 2 ? 1 : 0 ) ) * std::int64_t( s );
}

} // namespace detail

/*! Full GF(2) degree iff odd support, read off the full-monomial ANF coefficient. */
inline TheoremVerdict check_fact_2_1( FunctionProfile& p )
{
  TheoremVerdict v;
  v.id = "2.1";
  const auto a = anf( p.table() );
  const bool full_monomial = a.coeffs.back() != 0;
  const bool odd = p.table().ones() % 2 == 1;
  v.lhs = full_monomial;
  v.rhs = odd;
  v.holds = full_monomial == odd;
  v.note = full_monomial == odd ? "" : "biconditional mismatch";
  return v;
}

/*! deg2(f) <= log2 of the Fourier sparsity, decided exactly as 2^deg2 <= fs. */
inline TheoremVerdict check_fact_2_2( FunctionProfile& p )
{
  if ( p.fs() == 0 )
  {
    TheoremVerdict v;
    v.id = "2.2";
    v.applicable = false; // constant 0: log of sparsity 0 undefined
    return v;
  }
  auto v = detail::inequality( "2.2", std::int64_t( 1 ) << p.deg2(), p.fs() );
  v.lhs = p.deg2();
  v.rhs = std::log2( double( p.fs() ) );
  v.slack = v.rhs - v.lhs;
  return v;
}

/*! Monotone collapse s = bs = C. */
inline TheoremVerdict check_fact_2_4( FunctionProfile& p )
{
  TheoremVerdict v;
  v.id = "2.4";
  if ( !p.monotone() )
  {
    v.applicable = false;
    return v;
  }
  v.lhs = p.cert();
  v.rhs = p.s();
  v.holds = p.s() == p.bs() && p.bs() == p.cert();
  v.note = "s=" + std::to_string( p.s() ) + " bs=" + std::to_string( p.bs() ) + " C=" + std::to_string( p.cert() );
  return v;
}

/*! Monotone s <= deg2. */
inline TheoremVerdict check_fact_2_5( FunctionProfile& p )
{
  if ( !p.monotone() )
  {
    TheoremVerdict v;
    v.id = "2.5";
    v.applicable = false;
    return v;
  }
  return detail::inequality( "2.5", p.s(), p.deg2() );
}

/*! Both statements: max certificate at the lattice ends vs alt * s and alt * deg2. */
inline TheoremVerdict check_lemma_3_1( FunctionProfile& p )
{
  const std::int64_t lhs = std::max( p.c_zero(), p.c_one() );
  const std::int64_t rhs1 = std::int64_t( p.alt() ) * p.s();
  const std::int64_t rhs2 = std::int64_t( p.alt() ) * p.deg2();
  auto v = detail::inequality( "3.1", lhs, std::min( rhs1, rhs2 ) );
  v.note = "alt*s=" + std::to_string( rhs1 ) + " alt*deg2=" + std::to_string( rhs2 );
  return v;
}

/*! bs <= C_t * s for alt = 2t, (C_t + 1) * s for alt = 2t + 1. */
inline TheoremVerdict check_theorem_3_2( FunctionProfile& p )
{
  const int t = p.alt() / 2;
  auto v = detail::inequality( "3.2", p.bs(), detail::alt_sen_bound( p.alt(), p.s() ) );
  v.note = "t=" + std::to_string( t ) + " C_t=" + std::to_string( detail::bs_constant( t ) );
  return v;
}

/*! The sensitivity-conjecture bound instantiated with the explicit constants. */
inline TheoremVerdict check_theorem_1_1( FunctionProfile& p )
{
  auto v = detail::inequality( "1.1", p.bs(), detail::alt_sen_bound( p.alt(), p.s() ) );
  v.note = "explicit-constant form";
  return v;
}

/*! dt <= alt * deg2^2. */
inline TheoremVerdict check_theorem_4_1( FunctionProfile& p )
{
  return detail::inequality( "4.1", p.dt(), std::int64_t( p.alt() ) * p.deg2() * p.deg2() );
}

/*! dt <= alt * s * deg2. */
inline TheoremVerdict check_corollary_4_2( FunctionProfile& p )
{
  return detail::inequality( "4.2", p.dt(), std::int64_t( p.alt() ) * p.s() * p.deg2() );
}

/*! Constructed min-certificate tree: correct on every input, depth <= Cmin^cl * deg2. */
inline TheoremVerdict check_theorem_2_3( FunctionProfile& p )
{
  auto v = detail::inequality( "2.3", p.greedy_depth(), std::int64_t( p.cmin_cl() ) * p.deg2() );
  if ( !p.greedy_correct() )
  {
    v.holds = false;
    v.note = "constructed tree mis-evaluates";
  }
  return v;
}

/*! Chain 2*dt <= 2*alt*deg2^2 <= 2*alt*log2^2(fs); decided exactly. */
inline TheoremVerdict check_theorem_1_2( FunctionProfile& p )
{
  TheoremVerdict v;
  v.id = "1.2";
  if ( p.fs() == 0 )
  {
    v.applicable = false;
    return v;
  }
  const std::int64_t lhs = 2 * std::int64_t( p.dt() );
  const std::int64_t mid = 2 * std::int64_t( p.alt() ) * p.deg2() * p.deg2();
  const bool tail = ( std::int64_t( 1 ) << p.deg2() ) <= p.fs(); // deg2 <= log2 fs
  const double log_fs = std::log2( double( p.fs() ) );
  v.lhs = double( lhs );
  v.rhs = 2.0 * p.alt() * log_fs * log_fs;
  v.slack = v.rhs - v.lhs;
  v.holds = lhs <= mid && tail;
  if ( mid > 0 )
  {
    v.ratio_num = lhs;
    v.ratio_den = mid;
  }
  v.note = "2*alt*deg2^2=" + std::to_string( mid );
  return v;
}

inline const std::vector<std::string>& all_theorem_ids()
{
  static const std::vector<std::string> ids = { "1.1", "1.2", "2.1", "2.2", "2.3", "2.4", "2.5", "3.1", "3.2", "4.1", "4.2" };
  return ids;
}

inline TheoremVerdict run_checker( const std::string& id, FunctionProfile& p )
{
  if ( id == "1.1" )
  {
    return check_theorem_1_1( p );
  }
  if ( id == "1.2" )
  {
    return check_theorem_1_2( p );
  }
  if ( id == "2.1" )
  {
    return check_fact_2_1( p );
  }
  if ( id == "2.2" )
  {
    return check_fact_2_2( p );
  }
  if ( id == "2.3" )
  {
    return check_theorem_2_3( p );
  }
  if ( id == "2.4" )
  {
    return check_fact_2_4( p );
  }
  if ( id == "2.5" )
  {
    return check_fact_2_5( p );
  }
  if ( id == "3.1" )
  {
    return check_lemma_3_1( p );
  }
  if ( id == "3.2" )
  {
    return check_theorem_3_2( p );
  }
  if ( id == "4.1" )
  {
    return check_theorem_4_1( p );
  }
  if ( id == "4.2" )
  {
    return check_corollary_4_2( p );
  }
  throw parse_error( "unknown theorem id: " + id );
}

/*! All checkers on one function, in the canonical id order. */
inline std::vector<TheoremVerdict> check_all( const TruthTable& t, const Caps& caps = {} )
{
  FunctionProfile p( t, caps );
  std::vector<TheoremVerdict> out;
  for ( const auto& id : all_theorem_ids() )
  {
    out.push_back( run_checker( id, p ) );
  }
  return out;
}

/*! Function space for a sweep: exhaustive over {0,1}^n (n <= 4) or a spec list. */
struct SweepSpace
{
  enum class Kind
  {
    exhaustive,
    list
  };

  Kind kind = Kind::exhaustive;
  int n = 0;
  std::vector<std::string> specs;

  static SweepSpace exhaustive( int arity )
  {
    if ( arity < 0 || arity > 4 )
    {
      throw cap_exceeded( "exhaustive sweeps cover n <= 4 only" );
    }
    SweepSpace s;
    s.kind = Kind::exhaustive;
    s.n = arity;
    return s;
  }

  static SweepSpace from_list( std::vector<std::string> function_specs )
  {
    SweepSpace s;
    s.kind = Kind::list;
    s.specs = std::move( function_specs );
    return s;
  }

  std::uint64_t size() const
  {
    return kind == Kind::exhaustive ? std::uint64_t( 1 ) << ( std::uint64_t( 1 ) << n ) : specs.size();
  }

  TruthTable function_at( std::uint64_t i ) const
  {
    if ( kind == Kind::list )
    {
      return parse_function_spec( specs[i] );
    }
    TruthTable t( n );
    for ( Point x = 0; x < Point( t.size() ); ++x )
    {
      t.set( x, i >> x & 1 );
    }
    return t;
  }

  std::string label_at( std::uint64_t i ) const
  {
    return kind == Kind::list ? specs[i] : function_at( i ).format();
  }

  std::string describe() const
  {
    return kind == Kind::exhaustive ? "exhaustive:" + std::to_string( n ) : "list:" + std::to_string( specs.size() );
  }
};

struct TheoremStats
{
  std::string id;
  std::uint64_t checked = 0;
  std::uint64_t holds = 0;
  std::uint64_t violations = 0;
  // exact tightness ratio lhs/rhs maximized over the space
  std::int64_t ratio_num = 0;
  std::int64_t ratio_den = 0;
  std::uint64_t witness_index = 0;
  std::string witness;
};

struct Violation
{
  std::string function;
  std::string theorem;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SweepResult
{
  std::string space;
  std::vector<std::string> theorems;
  std::uint64_t functions = 0;
  std::vector<TheoremStats> per_theorem;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail
{

/*! Better tightness candidate: larger exact ratio, earlier index on ties. */
inline bool ratio_improves( const TheoremStats& cur, std::int64_t num, std::int64_t den, std::uint64_t index )
{
  if ( den <= 0 )
  {
    return false;
  }
  if ( cur.ratio_den == 0 )
  {
    return true;
  }
  const auto lhs = num * cur.ratio_den;
  const auto rhs = cur.ratio_num * den;
  if ( lhs != rhs )
  {
    return lhs > rhs;
  }
  return index < cur.witness_index;
}

struct SweepChunk
{
  std::vector<TheoremStats> stats;
  std::vector<Violation> violations;
};

inline SweepChunk sweep_range( const SweepSpace& space, const std::vector<std::string>& ids, const Caps& caps,
                               std::uint64_t begin, std::uint64_t end )
{
  SweepChunk chunk;
  chunk.stats.resize( ids.size() );
  for ( std::size_t k = 0; k < ids.size(); ++k )
  {
    chunk.stats[k].id = ids[k];
  }
  for ( std::uint64_t i = begin; i < end; ++i )
  {
    FunctionProfile p( space.function_at( i ), caps );
    for ( std::size_t k = 0; k < ids.size(); ++k )
    {
      const TheoremVerdict v = run_checker( ids[k], p );
      if ( !v.applicable )
      {
        continue;
      }
      auto& st = chunk.stats[k];
      ++st.checked;
      if ( v.holds )
      {
        ++st.holds;
      }
      else
      {
        ++st.violations;
        chunk.violations.push_back( { space.label_at( i ), ids[k], v.lhs, v.rhs } );
      }
      if ( ratio_improves( st, v.ratio_num, v.ratio_den, i ) )
      {
        st.ratio_num = v.ratio_num;
        st.ratio_den = v.ratio_den;
        st.witness_index = i;
        st.witness = space.label_at( i );
      }
    }
  }
  return chunk;
}

} // namespace detail

/*! \brief Runs the requested checkers over the whole space.

  Chunks are merged in index order with commutative updates, so the output is
  byte-identical for every jobs value.
*/
inline SweepResult sweep( const SweepSpace& space, std::vector<std::string> ids = {}, int jobs = 0, const Caps& caps = {} )
{
  if ( ids.empty() )
  {
    ids = all_theorem_ids();
  }
  for ( const auto& id : ids )
  {
    const auto& known = all_theorem_ids();
    if ( std::find( known.begin(), known.end(), id ) == known.end() )
    {
      throw parse_error( "unknown theorem id: " + id );
    }
  }
  if ( jobs <= 0 )
  {
    jobs = int( std::thread::hardware_concurrency() );
    if ( jobs <= 0 )
    {
      jobs = 1;
    }
  }
  const std::uint64_t total = space.size();
  const std::uint64_t chunk_count = std::min<std::uint64_t>( jobs, std::max<std::uint64_t>( total, 1 ) );
  std::vector<detail::SweepChunk> chunks( chunk_count );
  std::vector<std::exception_ptr> errors( chunk_count );
  std::vector<std::thread> workers;
  for ( std::uint64_t c = 0; c < chunk_count; ++c )
  {
    const std::uint64_t begin = total * c / chunk_count;
    const std::uint64_t end = total * ( c + 1 ) / chunk_count;
    workers.emplace_back( [&, c, begin, end] {
      try
      {
        chunks[c] = detail::sweep_range( space, ids, caps, begin, end );
      }
      catch ( ... )
      {
        errors[c] = std::current_exception();
      }
    } );
  }
  for ( auto& w : workers )
  {
    w.join();
  }
  for ( auto& e : errors )
  {
    if ( e )
    {
      std::rethrow_exception( e );
    }
  }

  SweepResult res;
  res.space = space.describe();
  res.theorems = ids;
  res.functions = total;
  res.per_theorem.resize( ids.size() );
  for ( std::size_t k = 0; k < ids.size(); ++k )
  {
    res.per_theorem[k].id = ids[k];
  }
  for ( const auto& chunk : chunks )
  {
    for ( std::size_t k = 0; k < ids.size(); ++k )
    {
      auto& into = res.per_theorem[k];
      const auto& from = chunk.stats[k];
      into.checked += from.checked;
      into.holds += from.holds;
      into.violations += from.violations;
      if ( from.ratio_den != 0 && detail::ratio_improves( into, from.ratio_num, from.ratio_den, from.witness_index ) )
      {
        into.ratio_num = from.ratio_num;
        into.ratio_den = from.ratio_den;
        into.witness_index = from.witness_index;
        into.witness = from.witness;
      }
    }
    res.violations.insert( res.violations.end(), chunk.violations.begin(), chunk.violations.end() );
  }
  return res;
}

} // namespace boolfun
