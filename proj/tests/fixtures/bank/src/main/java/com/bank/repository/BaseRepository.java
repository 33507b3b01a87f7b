package com.bank.repository;

import java.util.ArrayList;
import java.util.List;
import java.util.Optional;

public abstract class BaseRepository<T> implements Repository<T> {
    protected final List<T> rows = new ArrayList<>();

    protected abstract long idOf(T row);

    public Optional<T> findById(long id) {
        return rows.stream().filter(r -> idOf(r) == id).findFirst();
    }

    public List<T> findAll() {
        return new ArrayList<>(rows);
    }
}
