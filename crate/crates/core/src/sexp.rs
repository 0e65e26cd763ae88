//! Thin helpers over `lexpr` for the parenthesized file formats.

use lexpr::Value;

use crate::Error;

pub fn parse(src: &str) -> Result<Value, Error> {
    lexpr::from_str(src).map_err(|e| Error::Parse(e.to_string()))
}

pub fn err<T>(msg: impl Into<String>, at: &Value) -> Result<T, Error> {
    Err(Error::Parse(format!("{}: `{at}`", msg.into())))
}

/// The elements of a proper list.
pub fn list(v: &Value) -> Result<Vec<&Value>, Error> {
    match v {
        Value::Null => Ok(Vec::new()),
        Value::Cons(_) => match v.list_iter() {
            Some(it) if v.is_list() => Ok(it.collect()),
            _ => err("expected a proper list", v),
        },
        _ => err("expected a list", v),
    }
}

pub fn symbol(v: &Value) -> Option<&str> {
    v.as_symbol()
}

pub fn nat(v: &Value) -> Result<u32, Error> {
    match v.as_u64() {
        Some(n) if n <= u32::MAX as u64 => Ok(n as u32),
        _ => err("expected a natural number", v),
    }
}

/// Splits `(head rest...)` into the head symbol and the remaining items.
pub fn head(v: &Value) -> Result<(&str, Vec<&Value>), Error> {
    let items = list(v)?;
    match items.split_first() {
        Some((h, rest)) => match symbol(h) {
            Some(s) => Ok((s, rest.to_vec())),
            None => err("expected a symbol in head position", v),
        },
        None => err("unexpected empty list", v),
    }
}

pub fn arity<'a>(form: &str, args: &'a [&'a Value], n: usize, at: &Value) -> Result<&'a [&'a Value], Error> {
    if args.len() == n {
        Ok(args)
    } else {
        err(format!("`{form}` expects {n} argument(s), got {}", args.len()), at)
    }
}

pub fn sym(s: &str) -> Value {
    Value::symbol(s)
}

pub fn num(n: u32) -> Value {
    Value::from(n as u64)
}

pub fn list_of(items: impl IntoIterator<Item = Value>) -> Value {
    Value::list(items.into_iter().collect::<Vec<_>>())
}
